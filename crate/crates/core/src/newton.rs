//! Newton polygons of bivariate polynomials at a point.

use crate::error::{Error, Result};
use crate::field::{rat, FieldElem, Rat};
use crate::poly2::{Exp, Poly2};

/// One edge of the lower-left Newton polygon.
///
/// Along the edge, `x^j y^k` terms balance for branches `y ~ C·x^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// `Δk/Δj` of the edge (negative).
    pub slope: Rat,
    /// Leading Puiseux exponent `-1/slope`.
    pub exponent: Rat,
    /// Support points on the edge, by increasing `j`.
    pub support: Vec<Exp>,
}

impl Segment {
    pub fn start(&self) -> Exp {
        self.support[0]
    }

    pub fn end(&self) -> Exp {
        *self.support.last().unwrap()
    }

    /// Height of the edge, i.e. the number of branches it carries.
    pub fn height(&self) -> u32 {
        self.start().1 - self.end().1
    }
}

/// Newton polygon of `k` translated so that `at` becomes the origin.
pub fn newton_polygon(k: &Poly2, at: (&FieldElem, &FieldElem)) -> Result<Vec<Segment>> {
    if !k.eval(at.0, at.1).is_zero() {
        return Err(Error::NotVanishing);
    }
    Ok(newton_polygon_origin(&k.translate(at.0, at.1)))
}

/// Newton polygon at the origin. Factors `x^a y^b` of `k` produce no edges.
pub fn newton_polygon_origin(k: &Poly2) -> Vec<Segment> {
    let pts: Vec<Exp> = k.terms().map(|(e, _)| *e).collect();
    if pts.is_empty() {
        return Vec::new();
    }
    let jmin = pts.iter().map(|p| p.0).min().unwrap();
    let kmin = pts.iter().map(|p| p.1).min().unwrap();
    let left = pts
        .iter()
        .filter(|p| p.0 == jmin)
        .min_by_key(|p| p.1)
        .copied()
        .unwrap();
    let bottom = pts
        .iter()
        .filter(|p| p.1 == kmin)
        .min_by_key(|p| p.0)
        .copied()
        .unwrap();
    let mut segs = Vec::new();
    let mut cur = left;
    while cur != bottom {
        // Next vertex: minimal exponent (j - cj)/(ck - k) among points below.
        let mut best: Option<(Rat, Exp)> = None;
        for &p in pts.iter().filter(|p| p.1 < cur.1) {
            let mu = rat(p.0 as i64 - cur.0 as i64, cur.1 as i64 - p.1 as i64);
            best = match best {
                None => Some((mu, p)),
                Some((bm, bp)) => {
                    if mu < bm || (mu == bm && p.1 < bp.1) {
                        Some((mu, p))
                    } else {
                        Some((bm, bp))
                    }
                }
            };
        }
        let (mu, next) = best.expect("bottom point lies below");
        let mut support: Vec<Exp> = pts
            .iter()
            .filter(|p| {
                p.1 <= cur.1
                    && p.1 >= next.1
                    && rat(p.0 as i64 - cur.0 as i64, 1) == &mu * rat(cur.1 as i64 - p.1 as i64, 1)
            })
            .copied()
            .collect();
        support.sort();
        segs.push(Segment {
            slope: -mu.recip(),
            exponent: mu,
            support,
        });
        cur = next;
    }
    segs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::var::Var;

    const XY: (Var, Var) = (Var::X, Var::Y);

    #[test]
    fn cusp_and_line() {
        let f = Field::rationals();
        let cusp = Poly2::from_i64(XY, &f, &[(0, 2, 1), (3, 0, -1)]);
        let s = newton_polygon(&cusp, (&f.zero(), &f.zero())).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].exponent, rat(3, 2));
        let line = Poly2::from_i64(XY, &f, &[(1, 0, 1), (0, 1, -1)]);
        let s = newton_polygon_origin(&line);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].exponent, rat(1, 1));
    }

    #[test]
    fn three_edges() {
        let f = Field::rationals();
        let k = Poly2::from_i64(XY, &f, &[(0, 6, -1), (1, 2, 3), (2, 1, 3), (6, 0, -1), (3, 3, 1)]);
        let s = newton_polygon_origin(&k);
        let ex: Vec<Rat> = s.iter().map(|x| x.exponent.clone()).collect();
        assert_eq!(ex, vec![rat(1, 4), rat(1, 1), rat(4, 1)]);
        assert_eq!(s[0].height(), 4);
    }

    #[test]
    fn rejects_nonvanishing_point() {
        let f = Field::rationals();
        let k = Poly2::from_i64(XY, &f, &[(0, 0, 1), (1, 0, 1)]);
        assert!(newton_polygon(&k, (&f.zero(), &f.zero())).is_err());
    }
}
