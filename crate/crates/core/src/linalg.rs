//! Exact dense linear algebra over a field.

use crate::field::FieldElem;

pub type Matrix = Vec<Vec<FieldElem>>;

/// Determinant by Gaussian elimination. Panics on an empty or ragged matrix.
pub fn determinant(mut m: Matrix) -> FieldElem {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let inv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let v = &m[r][c] - &(&f * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                let v = &m[i][k] - &(&f * &m[r][k]);
                m[i][k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v : m·v = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<FieldElem>> {
    if m.is_empty() {
        return Vec::new();
    }
    let field = m[0][0].field().clone();
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `m·v = rhs`; `None` if inconsistent. Free variables are set to 0.
pub fn solve(m: &Matrix, rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let field = rhs.first()?.field().clone();
    let mut v = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = aug[r][cols].clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn det_and_solve() {
        let f = Field::rationals();
        let m = vec![
            vec![f.int(2), f.int(1), f.int(0)],
            vec![f.int(1), f.int(3), f.int(1)],
            vec![f.int(0), f.int(1), f.int(4)],
        ];
        assert_eq!(determinant(m.clone()), f.int(18));
        let v = solve(&m, &[f.int(1), f.int(2), f.int(3)]).unwrap();
        for (row, b) in m.iter().zip([1, 2, 3]) {
            let s = row.iter().zip(&v).fold(f.zero(), |acc, (a, x)| &acc + &(a * x));
            assert_eq!(s, f.int(b));
        }
        let sing = vec![vec![f.int(1), f.int(2)], vec![f.int(2), f.int(4)]];
        assert_eq!(kernel(&sing, 2).len(), 1);
        assert!(solve(&sing, &[f.int(1), f.int(0)]).is_none());
    }
}
