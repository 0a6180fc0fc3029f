//! Smith normal form over the integers with explicit unimodular transforms,
//! and the row-vector linear solver built on it.

pub type IntMatrix = Vec<Vec<i128>>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, nonnegative.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i128>,
    pub rank: usize,
    rows: usize,
    cols: usize,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[t][j];
            }
        }
    }
    out
}

/// Row vector times matrix.
pub fn vec_mul(v: &[i128], a: &IntMatrix) -> Vec<i128> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![0i128; m];
    for (t, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for j in 0..m {
            out[j] += x * a[t][j];
        }
    }
    out
}

impl Smith {
    pub fn compute(a: &IntMatrix, cols: usize) -> Smith {
        let rows = a.len();
        let mut d: IntMatrix = a.clone();
        for r in &d {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        let mut u = identity(rows);
        let mut v = identity(cols);
        let mut t = 0;
        while t < rows.min(cols) {
            // Pivot: smallest nonzero absolute value in the remaining block.
            let mut pivot = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0
                        && pivot
                            .is_none_or(|(pi, pj): (usize, usize)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut done = false;
            while !done {
                done = true;
                for i in t + 1..rows {
                    if d[i][t] != 0 {
                        let q = d[i][t].div_euclid(d[t][t]);
                        row_sub(&mut d, i, t, q);
                        row_sub(&mut u, i, t, q);
                        if d[i][t] != 0 {
                            d.swap(t, i);
                            u.swap(t, i);
                            done = false;
                        }
                    }
                }
                for j in t + 1..cols {
                    if d[t][j] != 0 {
                        let q = d[t][j].div_euclid(d[t][t]);
                        col_sub(&mut d, j, t, q);
                        col_sub(&mut v, j, t, q);
                        if d[t][j] != 0 {
                            swap_cols(&mut d, t, j);
                            swap_cols(&mut v, t, j);
                            done = false;
                        }
                    }
                }
                if done {
                    // Divisibility: fold any offending row into the pivot row.
                    let p = d[t][t];
                    'outer: for i in t + 1..rows {
                        for j in t + 1..cols {
                            if d[i][j] % p != 0 {
                                row_add(&mut d, t, i);
                                row_add(&mut u, t, i);
                                done = false;
                                break 'outer;
                            }
                        }
                    }
                }
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
        let rank = t;
        let diagonal = (0..rows.min(cols)).map(|i| d[i][i]).collect();
        Smith {
            u,
            v,
            diagonal,
            rank,
            rows,
            cols,
        }
    }

    /// Some integer row vector `x` with `x · A = b`, if one exists.
    pub fn solve_left(&self, b: &[i128]) -> Option<Vec<i128>> {
        assert_eq!(b.len(), self.cols);
        // x U⁻¹ D = b V; put y = x U⁻¹.
        let c = vec_mul(b, &self.v);
        let mut y = vec![0i128; self.rows];
        for i in 0..self.cols {
            if i < self.rank {
                let di = self.diagonal[i];
                if c[i] % di != 0 {
                    return None;
                }
                y[i] = c[i] / di;
            } else if c[i] != 0 {
                return None;
            }
        }
        Some(vec_mul(&y, &self.u))
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[i] -= q * row[t]
fn row_sub(m: &mut IntMatrix, i: usize, t: usize, q: i128) {
    if q == 0 {
        return;
    }
    let src = m[t].clone();
    for (x, s) in m[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// row[t] += row[i]
fn row_add(m: &mut IntMatrix, t: usize, i: usize) {
    let src = m[i].clone();
    for (x, s) in m[t].iter_mut().zip(src) {
        *x += s;
    }
}

/// col[j] -= q * col[t]
fn col_sub(m: &mut IntMatrix, j: usize, t: usize, q: i128) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[j] -= q * row[t];
    }
}

/// Inverse of a unimodular matrix, by solving against the identity.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let s = Smith::compute(m, n);
    assert_eq!(s.rank, n, "matrix is singular");
    assert!(
        s.diagonal.iter().all(|&d| d == 1),
        "matrix is not unimodular"
    );
    // U M V = I  ⇒  M⁻¹ = V U
    mat_mul(&s.v, &s.u)
}

/// Lattice `L ⊂ Zⁿ` spanned by integer rows; membership by solving.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: IntMatrix,
    smith: Smith,
}

impl Lattice {
    pub fn new(dim: usize, rows: IntMatrix) -> Self {
        let smith = Smith::compute(&rows, dim);
        Lattice { dim, rows, smith }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.smith.solve_left(v).is_some()
    }

    /// Index `[Zⁿ : L]` when `L` has full rank.
    pub fn index(&self) -> Option<i128> {
        if self.smith.rank < self.dim {
            return None;
        }
        Some(self.smith.diagonal[..self.dim].iter().product())
    }
}
