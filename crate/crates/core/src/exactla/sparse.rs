//! Column-compressed sparse integer matrices and a structured elimination
//! for ranks and invariant factors of large boundary matrices.

use super::int::Int;
use super::matrix::IntMatrix;
use super::smith;

/// Sparse matrix stored by columns; each column is sorted by row with no
/// explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Int)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, Int::one()));
        }
        m
    }

    /// Builds from unsorted column entries; duplicates are summed.
    pub fn from_column_entries(rows: usize, cols: Vec<Vec<(usize, Int)>>) -> Self {
        let columns = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, Int)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < rows, "row index {r} out of range {rows}");
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += &v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect::<Vec<_>>();
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut columns = vec![Vec::new(); m.cols()];
        for r in 0..m.rows() {
            for (c, v) in m.row(r).iter().enumerate() {
                if !v.is_zero() {
                    columns[c].push((r, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m[(*r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, Int)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Int::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r].add_mul_assign(a, &v[c]);
            }
        }
        out
    }

    /// `self · other` as a sparse matrix.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in sparse product"
        );
        let columns = other
            .columns
            .iter()
            .map(|oc| {
                let mut acc: Vec<(usize, Int)> = Vec::new();
                for (k, b) in oc {
                    for (r, a) in &self.columns[*k] {
                        acc.push((*r, a * b));
                    }
                }
                acc
            })
            .collect();
        SparseMatrix::from_column_entries(self.rows, columns)
    }

    pub fn mul_dense(&self, other: &IntMatrix) -> IntMatrix {
        self.to_dense().mul(other)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|(r, x)| (*r, -x)));
                v
            })
            .collect();
        SparseMatrix::from_column_entries(self.rows, columns)
    }
}

/// Rank and invariant factors (`> 1`) of a sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationSummary {
    pub rank: usize,
    /// Invariant factors different from 1, in divisibility order.
    pub torsion: Vec<Int>,
}

/// Structured elimination: unit pivots chosen by a Markowitz cost are
/// eliminated sparsely; whatever survives is finished by dense Smith form.
pub fn eliminate(m: &SparseMatrix) -> EliminationSummary {
    let mut cols: Vec<Vec<(usize, Int)>> = m.columns.clone();
    let mut col_alive = vec![true; m.cols];
    let mut row_alive = vec![true; m.rows];
    let mut row_count = vec![0usize; m.rows];
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            row_count[*r] += 1;
            row_cols[*r].push(c);
        }
    }
    let mut rank = 0usize;
    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (cost, col, row)
        'scan: for (c, col) in cols.iter().enumerate() {
            if !col_alive[c] || col.is_empty() {
                continue;
            }
            for (r, v) in col {
                if !v.is_unit() {
                    continue;
                }
                let cost = (col.len() - 1) * (row_count[*r] - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, c, *r));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        let pivot_col = std::mem::take(&mut cols[pc]);
        let pv = pivot_col.iter().find(|e| e.0 == pr).unwrap().1.clone();
        let mut targets = std::mem::take(&mut row_cols[pr]);
        targets.sort_unstable();
        targets.dedup();
        for &j in &targets {
            if j == pc || !col_alive[j] {
                continue;
            }
            let Ok(pos) = cols[j].binary_search_by_key(&pr, |e| e.0) else {
                continue;
            };
            // pivot is ±1, so a / pv = a * pv
            let q = &cols[j][pos].1 * &pv;
            let merged = merge_sub(&cols[j], &pivot_col, &q, &mut row_count, &mut row_cols, j);
            cols[j] = merged;
        }
        for (r, _) in &pivot_col {
            row_count[*r] -= 1;
        }
        col_alive[pc] = false;
        row_alive[pr] = false;
        rank += 1;
    }
    // dense finish on the surviving block
    let live_cols: Vec<usize> = (0..m.cols)
        .filter(|&c| col_alive[c] && !cols[c].is_empty())
        .collect();
    let mut live_rows: Vec<usize> = live_cols
        .iter()
        .flat_map(|&c| cols[c].iter().map(|e| e.0))
        .collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let mut torsion = Vec::new();
    if !live_cols.is_empty() {
        let mut index = vec![usize::MAX; m.rows];
        for (i, &r) in live_rows.iter().enumerate() {
            index[r] = i;
        }
        let mut d = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (j, &c) in live_cols.iter().enumerate() {
            for (r, v) in &cols[c] {
                debug_assert!(row_alive[*r]);
                d[(index[*r], j)] = v.clone();
            }
        }
        let f = smith::invariant_factors(&d);
        rank += f.len();
        torsion = f.into_iter().filter(|x| !x.is_one()).collect();
    }
    EliminationSummary { rank, torsion }
}

fn merge_sub(
    a: &[(usize, Int)],
    p: &[(usize, Int)],
    q: &Int,
    row_count: &mut [usize],
    row_cols: &mut [Vec<usize>],
    col: usize,
) -> Vec<(usize, Int)> {
    let mut out = Vec::with_capacity(a.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < p.len() {
        if j == p.len() || (i < a.len() && a[i].0 < p[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || p[j].0 < a[i].0 {
            let mut v = Int::zero();
            v.sub_mul_assign(q, &p[j].1);
            row_count[p[j].0] += 1;
            row_cols[p[j].0].push(col);
            out.push((p[j].0, v));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul_assign(q, &p[j].1);
            if v.is_zero() {
                row_count[a[i].0] -= 1;
            } else {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
