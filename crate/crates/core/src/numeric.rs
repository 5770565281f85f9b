//! Floating-point helpers: polynomial roots and exact reconstruction of
//! small-height numbers.

use crate::field::{Field, FieldElem, Rat};
use crate::poly1::Poly1;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// All complex roots (with multiplicity) of `Σ c_i z^i` by Aberth–Ehrlich
/// iteration followed by Newton polishing.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let lc = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lc).collect();
    if n == 1 {
        roots.push(-c[0]);
        return roots;
    }
    // Cauchy-type bound for the initial circle.
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let r0 = c[..n]
        .iter()
        .enumerate()
        .map(|(i, x)| x.norm().powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .clamp(1e-3, radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            let cand = *zi - step;
            if eval(cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

/// Roots of an exact polynomial, computed from its squarefree part.
pub fn roots_of(p: &Poly1) -> Vec<Complex64> {
    if p.is_constant() {
        return Vec::new();
    }
    poly_roots(&p.squarefree_part().to_c64_coeffs())
}

/// Best rational approximation `p/q` with `q <= max_den`, accepted only if
/// `|x - p/q| <= tol` and `|x - p/q|·q² <= 1e-3` (a gap that irrational
/// numbers of bounded partial quotients cannot fake).
pub fn rationalize(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1i64 } else { 1 };
    let ax = x.abs();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = ax;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        let err = (ax - approx).abs();
        let kf = k1 as f64;
        if err <= tol * ax.max(1.0) && err * kf * kf <= 1e-3 * ax.max(1.0) {
            return Some(Rat::new(
                BigInt::from(sign as i128 * h1),
                BigInt::from(k1),
            ));
        }
        let frac = r - a;
        if frac <= 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Reconstructs a field element near `z` with bounded denominators.
pub fn lift_complex(z: Complex64, field: &Field, max_den: u64, tol: f64) -> Option<FieldElem> {
    let scale = z.norm().max(1.0);
    match field.minpoly() {
        None => {
            if z.im.abs() > tol * scale {
                return None;
            }
            rationalize(z.re, max_den, tol).map(|r| FieldElem::from_rat(r, field))
        }
        Some(_) => {
            let alpha = field.generator_c64();
            if alpha.im.abs() < 1e-300 {
                // Real quadratic fields: only rational values are reconstructed.
                if z.im.abs() > tol * scale {
                    return None;
                }
                return rationalize(z.re, max_den, tol).map(|r| FieldElem::from_rat(r, field));
            }
            let b = z.im / alpha.im;
            let b = if b.abs() <= tol * scale {
                Rat::zero()
            } else {
                rationalize(b, max_den, tol)?
            };
            let bf = b.to_f64()?;
            let a = z.re - bf * alpha.re;
            let a = if a.abs() <= tol * scale {
                Rat::zero()
            } else {
                rationalize(a, max_den, tol)?
            };
            let e = FieldElem::new(a, b, field).ok()?;
            ((e.to_c64() - z).norm() <= 10.0 * tol * scale).then_some(e)
        }
    }
}

/// Distinct roots of `p` lying in its coefficient field, verified exactly.
pub fn field_roots(p: &Poly1) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::new();
    if p.is_constant() {
        return out;
    }
    let field = p.field().clone();
    let sf = p.squarefree_part();
    if sf.deg() == 1 {
        return vec![-(&sf.coeff(0) / &sf.coeff(1))];
    }
    for z in roots_of(&sf) {
        for tol in [1e-9, 1e-6] {
            if let Some(e) = lift_complex(z, &field, 1_000_000, tol) {
                if sf.eval(&e).is_zero() && !out.contains(&e) {
                    out.push(e);
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::var::Var;

    #[test]
    fn roots_of_cubic() {
        let c: Vec<Complex64> = [-6.0, 11.0, -6.0, 1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut r: Vec<f64> = poly_roots(&c).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rationalize_small_heights() {
        assert_eq!(rationalize(-8.0 / 3.0, 1_000_000, 1e-12), Some(rat(-8, 3)));
        assert_eq!(rationalize(0.0, 1_000_000, 1e-12), Some(rat(0, 1)));
        assert_eq!(rationalize(2f64.sqrt(), 1_000_000, 1e-12), None);
    }

    #[test]
    fn lift_in_eisenstein_field() {
        let f = Field::eisenstein();
        let e = &f.frac(-1, 243) + &(&f.generator().unwrap() * &f.frac(-2, 243));
        assert_eq!(lift_complex(e.to_c64(), &f, 1_000_000, 1e-12), Some(e));
        let g = Field::gaussian();
        assert!(lift_complex(Complex64::new(2f64.sqrt(), 0.0), &g, 1_000_000, 1e-12).is_none());
    }

    #[test]
    fn exact_roots() {
        let f = Field::rationals();
        let p = Poly1::from_i64(Var::T, &f, &[-8, 0, 1, 0]);
        assert!(field_roots(&p).is_empty());
        let p = &Poly1::from_i64(Var::T, &f, &[4, 3]) * &Poly1::from_i64(Var::T, &f, &[3, 0, 1]);
        assert_eq!(field_roots(&p), vec![f.frac(-4, 3)]);
    }
}
