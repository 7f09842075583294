//! Dense integer matrices and the exact linear algebra used everywhere else:
//! Smith normal form with transforms, integral solving, kernels, and
//! symplectic basis reduction.
//!
//! All arithmetic is exact. Products accumulate in `i128` and panic on
//! conversion back to `i64` rather than silently wrapping; the matrices in
//! this crate are small (rank below ~100) and never get close.

use std::fmt;

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in exact matrix arithmetic")
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = col[i];
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

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let acc = out[(i, j)] as i128 + a * other[(k, j)] as i128;
                    out[(i, j)] = narrow(acc);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let acc: i128 = (0..self.cols)
                    .map(|j| self[(i, j)] as i128 * v[j] as i128)
                    .sum();
                narrow(acc)
            })
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = narrow(*a as i128 + *b as i128);
        }
        out
    }

    pub fn neg(&self) -> IntMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -*a;
        }
        out
    }

    /// Writes `block` into `self` with upper-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn trace(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        narrow((0..self.rows).map(|i| self[(i, i)] as i128).sum())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = y;
            self[(i, b)] = x;
        }
    }

    /// row[a] += q * row[b]
    fn row_axpy(&mut self, a: usize, b: usize, q: i64) {
        for j in 0..self.cols {
            self[(a, j)] = narrow(self[(a, j)] as i128 + q as i128 * self[(b, j)] as i128);
        }
    }

    /// col[a] += q * col[b]
    fn col_axpy(&mut self, a: usize, b: usize, q: i64) {
        for i in 0..self.rows {
            self[(i, a)] = narrow(self[(i, a)] as i128 + q as i128 * self[(i, b)] as i128);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)];
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self[(i, a)] = -self[(i, a)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of {}x{}",
            self.rows,
            self.cols
        );
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of {}x{}",
            self.rows,
            self.cols
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with each entry dividing the next.
pub struct SmithForm {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| self.d[(i, i)] != 0).count()
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)]).filter(|&x| x != 0).collect()
    }
}

/// Smith normal form by repeated pivoting on the minimal nonzero entry.
pub fn smith(a: &IntMat) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut v = IntMat::identity(a.cols());
    let n = a.rows().min(a.cols());

    for k in 0..n {
        loop {
            // Find the nonzero entry of minimal absolute value in the
            // remaining block; stop when the block is zero.
            let mut pivot: Option<(usize, usize)> = None;
            let mut best = i64::MAX;
            for i in k..d.rows() {
                for j in k..d.cols() {
                    let x = d[(i, j)].abs();
                    if x != 0 && x < best {
                        best = x;
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithForm { u, v, d };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d[(k, k)] < 0 {
                d.negate_row(k);
                u.negate_row(k);
            }
            let p = d[(k, k)];

            let mut clean = true;
            for i in k + 1..d.rows() {
                let q = d[(i, k)].div_euclid(p);
                if q != 0 {
                    d.row_axpy(i, k, -q);
                    u.row_axpy(i, k, -q);
                }
                if d[(i, k)] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..d.cols() {
                let q = d[(k, j)].div_euclid(p);
                if q != 0 {
                    d.col_axpy(j, k, -q);
                    v.col_axpy(j, k, -q);
                }
                if d[(k, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let mut offender = None;
            'scan: for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if d[(i, j)] % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.row_axpy(k, i, 1);
                    u.row_axpy(k, i, 1);
                }
                None => break,
            }
        }
    }
    SmithForm { u, v, d }
}

pub fn rank(a: &IntMat) -> usize {
    smith(a).rank()
}

/// Basis of the integer kernel `{x : a x = 0}`, as column vectors.
/// The result spans a saturated sublattice.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<i64>> {
    let snf = smith(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// Solves `a x = b` over the integers for each column of `b`.
/// Returns `None` when no integral solution exists.
pub fn solve(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows(), b.rows(), "dimension mismatch in solve");
    let snf = smith(a);
    let r = snf.rank();
    let ub = snf.u.mul(b);
    let mut y = IntMat::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = ub[(i, j)];
            if i < r {
                let di = snf.d[(i, i)];
                if rhs % di != 0 {
                    return None;
                }
                if i < a.cols() {
                    y[(i, j)] = rhs / di;
                }
            } else if rhs != 0 {
                return None;
            }
        }
    }
    Some(snf.v.mul(&y))
}

/// Inverse of a unimodular matrix. Panics if `a` is not invertible over Z.
pub fn inverse_unimodular(a: &IntMat) -> IntMat {
    assert_eq!(a.rows(), a.cols());
    solve(a, &IntMat::identity(a.rows())).expect("matrix is not unimodular")
}

/// True when the columns of `a` span a saturated (primitive) sublattice,
/// i.e. all invariant factors are 1.
pub fn is_primitive_lattice(a: &IntMat) -> bool {
    smith(a).invariant_factors().iter().all(|&f| f == 1)
}

/// Determinant by Bareiss fraction-free elimination over i128.
pub fn det(a: &IntMat) -> i64 {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| a.row(i).iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    narrow(sign * m[n - 1][n - 1])
}

/// The standard symplectic form of rank `2g` in the interleaved basis
/// `a1, b1, ..., ag, bg`: `<a_i, b_i> = 1`.
pub fn standard_symplectic_form(g: usize) -> IntMat {
    let mut j = IntMat::zeros(2 * g, 2 * g);
    for i in 0..g {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

/// Symplectic basis for a unimodular antisymmetric form: returns unimodular
/// `b` with `b^T omega b` equal to the standard interleaved form.
///
/// Vectors in `seeds` must span a saturated pairwise-orthogonal sublattice;
/// they are taken (up to adding earlier pair vectors) as the first entries
/// of consecutive symplectic pairs, so the even-index span of the result
/// equals the seed span when the seeds have full rank g.
pub fn symplectic_transform(omega: &IntMat, seeds: &[Vec<i64>]) -> IntMat {
    let n = omega.rows();
    assert_eq!(n, omega.cols());
    assert!(n % 2 == 0, "odd rank cannot carry a symplectic form");
    let g = n / 2;
    assert!(seeds.len() <= g);

    // Start from a basis whose even-position columns are the seeds. Seeds
    // pair with each other trivially, so the reduction below only ever adds
    // earlier seeds to a seed column and the even span stays put.
    let mut b = if seeds.is_empty() {
        IntMat::identity(n)
    } else {
        let s = IntMat::from_columns(seeds, n);
        let snf = smith(&s);
        assert!(
            snf.invariant_factors().iter().all(|&f| f == 1) && snf.rank() == seeds.len(),
            "seeds must be a basis of a saturated sublattice"
        );
        // u s v = [I; 0]  =>  s v = u^{-1} [I; 0], so u^{-1} extends the
        // (column-transformed) seeds to a lattice basis.
        let ext = inverse_unimodular(&snf.u);
        let mut cols: Vec<Vec<i64>> = Vec::with_capacity(n);
        let mut fill = seeds.len()..n;
        for k in 0..n {
            let src = if k % 2 == 0 && k / 2 < seeds.len() {
                k / 2
            } else {
                fill.next()
                    .expect("interleaving exhausted the completion columns")
            };
            cols.push(ext.column(src));
        }
        IntMat::from_columns(&cols, n)
    };
    let mut gram = b.transpose().mul(omega).mul(&b);

    for k in 0..g {
        let i0 = 2 * k;
        // Euclidean reduction on row i0 to produce a unit pairing at i0+1.
        loop {
            let mut best_j = None;
            let mut best = i64::MAX;
            for j in i0 + 1..n {
                let x = gram[(i0, j)].abs();
                if x != 0 && x < best {
                    best = x;
                    best_j = Some(j);
                }
            }
            let j = best_j.expect("degenerate form: zero row in symplectic reduction");
            gram.swap_cols(i0 + 1, j);
            gram.swap_rows(i0 + 1, j);
            b.swap_cols(i0 + 1, j);
            let p = gram[(i0, i0 + 1)];
            let mut done = true;
            for j in i0 + 2..n {
                let q = gram[(i0, j)].div_euclid(p);
                if q != 0 {
                    gram.col_axpy(j, i0 + 1, -q);
                    gram.row_axpy(j, i0 + 1, -q);
                    b.col_axpy(j, i0 + 1, -q);
                }
                if gram[(i0, j)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if gram[(i0, i0 + 1)] < 0 {
            gram.negate_col(i0 + 1);
            gram.negate_row(i0 + 1);
            b.negate_col(i0 + 1);
        }
        assert_eq!(
            gram[(i0, i0 + 1)],
            1,
            "form is not unimodular or seed vector not primitive"
        );
        // Clear pairings of later vectors with the completed pair.
        for j in i0 + 2..n {
            let with_w = gram[(j, i0 + 1)];
            let with_v = gram[(j, i0)];
            if with_w != 0 {
                gram.col_axpy(j, i0, -with_w);
                gram.row_axpy(j, i0, -with_w);
                b.col_axpy(j, i0, -with_w);
            }
            if with_v != 0 {
                gram.col_axpy(j, i0 + 1, with_v);
                gram.row_axpy(j, i0 + 1, with_v);
                b.col_axpy(j, i0 + 1, with_v);
            }
        }
    }
    debug_assert_eq!(gram, standard_symplectic_form(g));
    b
}
