//! Dense row-major matrices over a [`FieldSpec`] and Gaussian elimination.

use crate::field::{FieldElement, FieldSpec};

pub type Row = Vec<FieldElement>;

/// Reduced row echelon form. Returns the nonzero reduced rows and their pivot
/// columns.
pub fn rref(field: &FieldSpec, rows: &[Row]) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                let pivot = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot).take(ncols) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(field: &FieldSpec, rows: &[Row]) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{x : rows · x = 0}` for vectors of length `ncols`.
pub fn nullspace(field: &FieldSpec, rows: &[Row], ncols: usize) -> Vec<Row> {
    let (reduced, pivots) = rref(field, rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FieldElement::ZERO; ncols];
            v[fc] = FieldElement::ONE;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// `row · matrix` where `matrix` has one row per entry of `row`.
pub fn vec_mul(field: &FieldSpec, row: &[FieldElement], matrix: &[Row], width: usize) -> Row {
    let mut out = vec![FieldElement::ZERO; width];
    for (&a, mrow) in row.iter().zip(matrix) {
        if a.is_zero() {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(mrow) {
            *o = field.add(*o, field.mul(a, b));
        }
    }
    out
}

pub fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

/// Two row sets span the same space.
pub fn same_row_space(field: &FieldSpec, a: &[Row], b: &[Row]) -> bool {
    rref(field, a).0 == rref(field, b).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(v: &[u8]) -> Row {
        v.iter().map(|&b| FieldElement(b)).collect()
    }

    #[test]
    fn nullspace_annihilates() {
        let f = FieldSpec::prime(2).unwrap();
        let g = vec![
            bits(&[1, 0, 0, 1, 1, 1]),
            bits(&[0, 1, 0, 1, 0, 1]),
            bits(&[0, 0, 1, 0, 1, 1]),
        ];
        let h = nullspace(&f, &g, 6);
        assert_eq!(h.len(), 3);
        assert_eq!(rank(&f, &h), 3);
        for gr in &g {
            for hr in &h {
                let dot = gr
                    .iter()
                    .zip(hr)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rref_over_gf3() {
        let f = FieldSpec::prime(3).unwrap();
        let rows = vec![bits(&[2, 1, 0]), bits(&[1, 2, 0]), bits(&[0, 0, 1])];
        // second row is twice the first
        assert_eq!(rank(&f, &rows), 2);
        let (r, piv) = rref(&f, &rows);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r[0], bits(&[1, 2, 0]));
    }
}
