//! Brute-force restricted wreath products, kept free of the automaton and
//! data machinery so that it can cross-check them.
//!
//! Multiplication law: `(f_1, t_1)(f_2, t_2) = (f_1 + t_1·f_2, t_1 t_2)` with
//! `(t·f)(g) = f(g t⁻¹)`, so a lamp at `p` moves to `p t`.

use std::collections::BTreeMap;

/// A group built from cyclic groups by direct products and wreath products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OGroup {
    /// `ℤ`.
    Z,
    /// `ℤ/n`.
    Cyclic(i64),
    /// Direct product.
    Product(Vec<OGroup>),
    /// `base ≀ top`.
    Wreath(Box<OGroup>, Box<OGroup>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OElem {
    Int(i64),
    Tuple(Vec<OElem>),
    Wr {
        lamps: BTreeMap<OElem, OElem>,
        top: Box<OElem>,
    },
}

impl OGroup {
    pub fn wreath(base: OGroup, top: OGroup) -> OGroup {
        OGroup::Wreath(Box::new(base), Box::new(top))
    }

    pub fn identity(&self) -> OElem {
        match self {
            OGroup::Z | OGroup::Cyclic(_) => OElem::Int(0),
            OGroup::Product(fs) => OElem::Tuple(fs.iter().map(|f| f.identity()).collect()),
            OGroup::Wreath(_, top) => OElem::Wr {
                lamps: BTreeMap::new(),
                top: Box::new(top.identity()),
            },
        }
    }

    pub fn is_identity(&self, g: &OElem) -> bool {
        *g == self.identity()
    }

    pub fn multiply(&self, a: &OElem, b: &OElem) -> OElem {
        match (self, a, b) {
            (OGroup::Z, OElem::Int(x), OElem::Int(y)) => OElem::Int(x + y),
            (OGroup::Cyclic(n), OElem::Int(x), OElem::Int(y)) => OElem::Int((x + y).rem_euclid(*n)),
            (OGroup::Product(fs), OElem::Tuple(xs), OElem::Tuple(ys)) => OElem::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.multiply(x, y))
                    .collect(),
            ),
            (
                OGroup::Wreath(base, top),
                OElem::Wr { lamps: l1, top: t1 },
                OElem::Wr { lamps: l2, top: t2 },
            ) => {
                let mut lamps = l1.clone();
                for (p, v) in l2 {
                    let q = top.multiply(p, t1);
                    let cur = lamps.remove(&q).unwrap_or_else(|| base.identity());
                    let sum = base.multiply(&cur, v);
                    if !base.is_identity(&sum) {
                        lamps.insert(q, sum);
                    }
                }
                OElem::Wr {
                    lamps,
                    top: Box::new(top.multiply(t1, t2)),
                }
            }
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    pub fn invert(&self, a: &OElem) -> OElem {
        match (self, a) {
            (OGroup::Z, OElem::Int(x)) => OElem::Int(-x),
            (OGroup::Cyclic(n), OElem::Int(x)) => OElem::Int((-x).rem_euclid(*n)),
            (OGroup::Product(fs), OElem::Tuple(xs)) => {
                OElem::Tuple(fs.iter().zip(xs).map(|(f, x)| f.invert(x)).collect())
            }
            (OGroup::Wreath(base, top), OElem::Wr { lamps, top: t }) => {
                // (f, t)⁻¹ = (-(t⁻¹·f), t⁻¹)
                let ti = top.invert(t);
                let lamps = lamps
                    .iter()
                    .map(|(p, v)| (top.multiply(p, &ti), base.invert(v)))
                    .collect();
                OElem::Wr {
                    lamps,
                    top: Box::new(ti),
                }
            }
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    pub fn pow(&self, a: &OElem, n: i64) -> OElem {
        let b = if n < 0 { self.invert(a) } else { a.clone() };
        (0..n.unsigned_abs()).fold(self.identity(), |acc, _| self.multiply(&acc, &b))
    }

    /// The lamp with value `v` at the top element `p`.
    pub fn lamp_at(&self, p: &OElem, v: &OElem) -> OElem {
        let OGroup::Wreath(base, top) = self else {
            panic!("{self:?} is not a wreath product");
        };
        let mut lamps = BTreeMap::new();
        if !base.is_identity(v) {
            lamps.insert(p.clone(), v.clone());
        }
        OElem::Wr {
            lamps,
            top: Box::new(top.identity()),
        }
    }

    /// The top element `t` with no lamps.
    pub fn from_top(&self, t: &OElem) -> OElem {
        assert!(
            matches!(self, OGroup::Wreath(..)),
            "{self:?} is not a wreath product"
        );
        OElem::Wr {
            lamps: BTreeMap::new(),
            top: Box::new(t.clone()),
        }
    }

    /// Element `g` in coordinate `i` of a direct product.
    pub fn embed(&self, i: usize, g: &OElem) -> OElem {
        let OGroup::Product(fs) = self else {
            panic!("{self:?} is not a direct product");
        };
        let mut v: Vec<OElem> = fs.iter().map(|f| f.identity()).collect();
        v[i] = g.clone();
        OElem::Tuple(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zwrz() -> (OGroup, OElem, OElem) {
        let g = OGroup::wreath(OGroup::Z, OGroup::Z);
        let y = g.lamp_at(&OElem::Int(0), &OElem::Int(1));
        let x = g.from_top(&OElem::Int(1));
        (g, y, x)
    }

    #[test]
    fn c2_lamp_squares_to_identity() {
        let g = OGroup::wreath(OGroup::Cyclic(2), OGroup::Z);
        let a = g.lamp_at(&OElem::Int(0), &OElem::Int(1));
        assert!(g.is_identity(&g.multiply(&a, &a)));
    }

    #[test]
    fn lamps_commute() {
        let (g, y, x) = zwrz();
        let yx = g.multiply(&g.multiply(&g.invert(&x), &y), &x);
        assert_eq!(g.multiply(&y, &yx), g.multiply(&yx, &y));
        assert_ne!(g.multiply(&y, &x), g.multiply(&x, &y));
    }

    #[test]
    fn inverse_and_associativity() {
        let (g, y, x) = zwrz();
        let w = [
            y.clone(),
            x.clone(),
            y.clone(),
            g.invert(&x),
            g.pow(&y, 3),
            g.pow(&x, 2),
        ];
        for a in &w {
            assert!(g.is_identity(&g.multiply(a, &g.invert(a))));
            for b in &w {
                for c in &w {
                    assert_eq!(
                        g.multiply(&g.multiply(a, b), c),
                        g.multiply(a, &g.multiply(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn y_then_x_then_y() {
        let (g, y, x) = zwrz();
        let w = g.multiply(&g.multiply(&y, &x), &y);
        let OElem::Wr { lamps, top } = w else {
            unreachable!()
        };
        assert_eq!(*top, OElem::Int(1));
        assert_eq!(
            lamps.into_iter().collect::<Vec<_>>(),
            vec![
                (OElem::Int(0), OElem::Int(1)),
                (OElem::Int(1), OElem::Int(1))
            ]
        );
    }
}
