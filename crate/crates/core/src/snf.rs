//! Smith normal form of small integer matrices.
//!
//! Produces unimodular `U`, `V` and diagonal `D` with `U * A * V = D`, the
//! nonzero diagonal entries positive and each dividing the next.

use num_integer::Integer;

pub type Matrix = Vec<Vec<i128>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub invariant_factors: Vec<i128>,
    pub left: Matrix,
    pub diagonal: Matrix,
    pub right: Matrix,
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// row_dst -= q * row_src
fn sub_row(m: &mut Matrix, dst: usize, src: usize, q: i128) {
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(src_row) {
        *d -= q * s;
    }
}

/// col_dst -= q * col_src
fn sub_col(m: &mut Matrix, dst: usize, src: usize, q: i128) {
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

pub fn smith_normal_form(a: &Matrix) -> SmithNormalForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            let q = Integer::div_floor(&d[i][t], &d[t][t]);
            if q != 0 {
                sub_row(&mut d, i, t, q);
                sub_row(&mut u, i, t, q);
            }
            clean &= d[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&d[t][j], &d[t][t]);
            if q != 0 {
                sub_col(&mut d, j, t, q);
                sub_col(&mut v, j, t, q);
            }
            clean &= d[t][j] == 0;
        }
        if !clean {
            // Remainders are smaller than the pivot; pick a new one.
            continue;
        }

        // Pivot must divide the rest of the block; otherwise fold an
        // offending row into row t and start over.
        let offender = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0));
        if let Some(i) = offender {
            sub_row(&mut d, t, i, -1);
            sub_row(&mut u, t, i, -1);
            continue;
        }

        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }

    let invariant_factors = (0..rows.min(cols))
        .map(|i| d[i][i])
        .filter(|&x| x != 0)
        .collect();
    SmithNormalForm {
        invariant_factors,
        left: u,
        diagonal: d,
        right: v,
    }
}

/// Determinant of a square integer matrix, by cofactor expansion. Only used
/// on tiny matrices.
pub fn determinant(m: &Matrix) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * determinant(&minor)
            })
            .sum(),
    }
}
