//! Exact integer linear algebra: Smith and Hermite forms, cokernels,
//! lattice membership, coset orders and ranks modulo a prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers with optional basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.into());
            }
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal<T: Into<BigInt> + Copy>(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x.into());
        }
        m
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        if row_labels.len() != self.rows || col_labels.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{} row / {} column labels for a {}x{} matrix",
                row_labels.len(),
                col_labels.len(),
                self.rows,
                self.cols
            )));
        }
        for labels in [&row_labels, &col_labels] {
            let mut sorted = labels.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Dimension("duplicate matrix labels".into()));
            }
        }
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn negated(&self) -> IntMatrix {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = -std::mem::take(x);
        }
        m
    }

    /// Submatrix on the given row and column index lists (labels carried over).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        if let Some(l) = &self.row_labels {
            m.row_labels = Some(rows.iter().map(|&i| l[i].clone()).collect());
        }
        if let Some(l) = &self.col_labels {
            m.col_labels = Some(cols.iter().map(|&j| l[j].clone()).collect());
        }
        m
    }

    /// Entries equal, labels ignored.
    pub fn same_entries(&self, other: &IntMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    /// Sparse triplet text: `rows cols` header then `i j value` for each
    /// nonzero entry, sorted by `(i, j)`, LF line endings.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    s.push_str(&format!("{i} {j} {x}\n"));
                }
            }
        }
        s
    }

    pub fn from_triplets(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut m = IntMatrix::zeros(rows, cols);
        let mut last: Option<(usize, usize)> = None;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("bad line {line:?}")));
            }
            let i: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad row in {line:?}")))?;
            let j: usize = fields[1].parse().map_err(|_| Error::Parse(format!("bad column in {line:?}")))?;
            let x: BigInt = fields[2].parse().map_err(|_| Error::Parse(format!("bad value in {line:?}")))?;
            if i >= rows || j >= cols {
                return Err(Error::Parse(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            if last.is_some_and(|p| p >= (i, j)) {
                return Err(Error::Parse(format!("entries not sorted at {line:?}")));
            }
            last = Some((i, j));
            m.set(i, j, x);
        }
        Ok(m)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j).to_string())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`, `d_1 | ... | d_t`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, vec![BigInt::from(order)])
    }

    /// Canonical form of `Z^free ⊕ ⊕ Z/t` for arbitrary nonzero torsion orders
    /// `t` (units dropped, chain normalised).
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let mut chain = divisibility_chain(torsion.into_iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect());
        chain.retain(|x| !x.is_one());
        AbelianGroup {
            free_rank,
            invariant_factors: chain,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }
}

/// `0`, `Z_m`, or `Z^r (+) Z_m1 (+) ...`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// Serialises integers as JSON numbers when they fit in 64 bits, else as strings.
pub(crate) fn serialize_factors<S: Serializer>(v: &[BigInt], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(v.len()))?;
    for d in v {
        match d.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn divisibility_chain(mut v: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let g = v[i].gcd(&v[j]);
            if g.is_zero() {
                continue;
            }
            let l = &v[i] / &g * &v[j];
            v[i] = g;
            v[j] = l;
        }
    }
    v
}

/// Working copy for diagonalisation, rows stored separately for cheap swaps.
struct Reducer {
    m: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    left: Option<Vec<Vec<BigInt>>>,
    left_inv: Option<Vec<Vec<BigInt>>>,
}

fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // a = q b + r with |r| <= |b| / 2
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = r.abs() * 2u32;
    if twice > b.abs() {
        q + 1
    } else {
        q
    }
}

impl Reducer {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let m = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
        let ident = |n: usize| {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect::<Vec<Vec<BigInt>>>()
        };
        Reducer {
            m,
            rows: a.rows,
            cols: a.cols,
            left: track.then(|| ident(a.rows)),
            left_inv: track.then(|| ident(a.rows)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        if let Some(u) = &mut self.left {
            u.swap(i, j);
        }
        if let Some(w) = &mut self.left_inv {
            for row in w.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.m {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt, from_col: usize) {
        let (src, dst) = if i < t {
            let (lo, hi) = self.m.split_at_mut(t);
            (&hi[0], &mut lo[i])
        } else {
            let (lo, hi) = self.m.split_at_mut(i);
            (&lo[t], &mut hi[0])
        };
        for j in from_col..self.cols {
            if !src[j].is_zero() {
                dst[j] -= q * &src[j];
            }
        }
        if let Some(u) = &mut self.left {
            let src = u[t].clone();
            for (d, s) in u[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        if let Some(w) = &mut self.left_inv {
            // inverse operation on columns: col_t += q * col_i
            for row in w.iter_mut() {
                if !row[i].is_zero() {
                    let add = q * &row[i];
                    row[t] += add;
                }
            }
        }
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt, from_row: usize) {
        for row in self.m.iter_mut().skip(from_row) {
            if !row[t].is_zero() {
                let sub = q * &row[t];
                row[j] -= sub;
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.m[i][j];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                    let done = a.is_one();
                    best = Some((i, j, a));
                    if done {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Diagonalise by unimodular row and column operations; returns the
    /// diagonal (not yet a divisibility chain).
    fn diagonalize(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.m[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.m[i][t].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.m[i][t], &p);
                    self.row_axpy(i, t, &q, t);
                    if !self.m[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.m[t][j].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.m[t][j], &p);
                    self.col_axpy(j, t, &q, t);
                    if !self.m[t][j].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
                // move the smallest remainder in row t / column t to the pivot
                let mut best = (t, t, p.abs());
                for i in t + 1..self.rows {
                    let a = self.m[i][t].abs();
                    if !a.is_zero() && a < best.2 {
                        best = (i, t, a);
                    }
                }
                for j in t + 1..self.cols {
                    let a = self.m[t][j].abs();
                    if !a.is_zero() && a < best.2 {
                        best = (t, j, a);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
            }
            diag.push(self.m[t][t].clone());
            t += 1;
        }
        diag
    }
}

/// Smith normal form invariants of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer::new(a, false);
    let diag = r.diagonalize();
    let rank = diag.len();
    let invariant_factors = divisibility_chain(diag.into_iter().map(|x| x.abs()).collect());
    SmithForm { invariant_factors, rank }
}

/// Cokernel of `a` viewed as a map into `Z^ambient`.
pub fn cokernel(a: &IntMatrix, ambient: usize) -> Result<AbelianGroup> {
    if ambient != a.rows {
        return Err(Error::Dimension(format!("ambient rank {ambient} but matrix has {} rows", a.rows)));
    }
    let snf = smith_normal_form(a);
    Ok(AbelianGroup::new(ambient - snf.rank, snf.invariant_factors))
}

/// Diagonalisation `U a V = D` with `U` and `U^{-1}` recorded, for coset
/// computations in the cokernel.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    diagonal: Vec<BigInt>,
    left: Vec<Vec<BigInt>>,
    left_inv: Vec<Vec<BigInt>>,
    rows: usize,
}

impl CokernelPresentation {
    pub fn new(a: &IntMatrix) -> Self {
        let mut r = Reducer::new(a, true);
        let diagonal = r.diagonalize();
        CokernelPresentation {
            diagonal,
            left: r.left.unwrap(),
            left_inv: r.left_inv.unwrap(),
            rows: a.rows,
        }
    }

    fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.left
            .iter()
            .map(|row| row.iter().zip(v).filter(|(u, _)| !u.is_zero()).map(|(u, x)| u * x).sum())
            .collect()
    }

    /// Least `m >= 1` with `m v` in the column lattice, `None` if there is none.
    pub fn coset_order(&self, v: &[BigInt]) -> Result<Option<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!("vector of length {} for {} rows", v.len(), self.rows)));
        }
        let w = self.coordinates(v);
        let mut order = BigInt::one();
        for (i, x) in w.iter().enumerate() {
            match self.diagonal.get(i) {
                Some(d) => {
                    let g = x.gcd(d);
                    order = order.lcm(&(d.abs() / g));
                }
                None => {
                    if !x.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(order))
    }

    /// A vector whose class generates the torsion of the cokernel when that
    /// torsion is cyclic: the sum of the basis vectors belonging to the
    /// non-unit diagonal entries.
    pub fn torsion_generator(&self) -> Vec<BigInt> {
        let mut g = vec![BigInt::zero(); self.rows];
        for (i, d) in self.diagonal.iter().enumerate() {
            if d.abs().is_one() {
                continue;
            }
            for (k, row) in self.left_inv.iter().enumerate() {
                g[k] += &row[i];
            }
        }
        g
    }
}

/// Least `m >= 1` such that `m v` lies in the column lattice of `a`.
pub fn coset_order(a: &IntMatrix, v: &[BigInt]) -> Result<Option<BigInt>> {
    CokernelPresentation::new(a).coset_order(v)
}

/// Column echelon form `H = A V` with `V` unimodular.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    h: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    /// (row, column) of each pivot, rows strictly increasing, columns 0..k.
    pivots: Vec<(usize, usize)>,
    rows: usize,
    cols: usize,
}

impl ColumnHermite {
    pub fn new(a: &IntMatrix) -> Self {
        let rows = a.rows;
        let cols = a.cols;
        // stored column-major: h[j] is column j
        let mut h: Vec<Vec<BigInt>> = (0..cols).map(|j| a.column(j)).collect();
        let mut v: Vec<Vec<BigInt>> = (0..cols)
            .map(|j| (0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut k = 0;
        for r in 0..rows {
            if k == cols {
                break;
            }
            loop {
                // smallest nonzero entry of row r among columns k..
                let mut best: Option<(usize, BigInt)> = None;
                for (j, col) in h.iter().enumerate().skip(k) {
                    let x = col[r].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| &x < b) {
                        best = Some((j, x));
                    }
                }
                let Some((j, _)) = best else { break };
                h.swap(k, j);
                v.swap(k, j);
                let mut clean = true;
                for j in k + 1..cols {
                    if h[j][r].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&h[j][r], &h[k][r]);
                    let (lo, hi) = h.split_at_mut(j);
                    for (dst, src) in hi[0].iter_mut().zip(&lo[k]).skip(r) {
                        if !src.is_zero() {
                            *dst -= &q * src;
                        }
                    }
                    let (vlo, vhi) = v.split_at_mut(j);
                    for (dst, src) in vhi[0].iter_mut().zip(&vlo[k]) {
                        if !src.is_zero() {
                            *dst -= &q * src;
                        }
                    }
                    if !h[j][r].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    pivots.push((r, k));
                    k += 1;
                    break;
                }
            }
        }
        ColumnHermite { h, v, pivots, rows, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some `x` with `A x = target`, or `None` when `target` is outside the lattice.
    pub fn solve(&self, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if target.len() != self.rows {
            return Err(Error::Dimension(format!("vector of length {} for {} rows", target.len(), self.rows)));
        }
        let mut residual = target.to_vec();
        let mut y = vec![BigInt::zero(); self.cols];
        for &(r, c) in &self.pivots {
            let p = &self.h[c][r];
            let (q, rem) = residual[r].div_rem(p);
            if !rem.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (res, x) in residual.iter_mut().zip(&self.h[c]).skip(r) {
                    if !x.is_zero() {
                        *res -= &q * x;
                    }
                }
            }
            y[c] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        // x = V y, with v[j] the j-th column of V
        let mut x = vec![BigInt::zero(); self.cols];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (xi, vij) in x.iter_mut().zip(&self.v[j]) {
                if !vij.is_zero() {
                    *xi += yj * vij;
                }
            }
        }
        Ok(Some(x))
    }
}

/// Integer solution of `a x = v`, or `None` (not in the column lattice).
pub fn hermite_solve(a: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let x = ColumnHermite::new(a).solve(v)?;
    if let Some(x) = &x {
        debug_assert_eq!(a.mul_vec(x), v);
    }
    Ok(x)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced residue"))
                .collect()
        })
        .collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(piv) = (rank..a.rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], p - 2);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            if row[c] == 0 {
                continue;
            }
            let f = (row[c] as u128 * inv as u128 % p as u128) as u64;
            for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                let sub = (f as u128 * y as u128 % p as u128) as u64;
                *x = (*x + p - sub) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Convert small integers to a `BigInt` vector.
pub fn int_vec<T: Into<BigInt> + Copy>(v: &[T]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        int_vec(v)
    }

    fn det(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &a[0][j] * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }

    /// Invariant factors from gcds of k x k minors.
    fn determinantal_invariants(a: &IntMatrix) -> Vec<BigInt> {
        let mut divisors = vec![BigInt::one()];
        for k in 1..=a.rows().min(a.cols()) {
            let mut g = BigInt::zero();
            for rs in combos(a.rows(), k) {
                for cs in combos(a.cols(), k) {
                    let sub: Vec<Vec<BigInt>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g.is_zero() {
                break;
            }
            divisors.push(g);
        }
        divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
    }

    fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        if n < 2 {
            return u;
        }
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            if i == j {
                j = (j + 1) % n;
            }
            let q = BigInt::from(rng.gen_range(-2i64..=2));
            for c in 0..n {
                let x = u.get(i, c) + &q * u.get(j, c);
                u.set(i, c, x);
            }
        }
        u
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    #[test]
    fn smith_examples() {
        let a = m(&[vec![3, 3]]);
        assert_eq!(smith_normal_form(&a).invariant_factors, big(&[3]));
        assert_eq!(cokernel(&a, 1).unwrap(), AbelianGroup::cyclic(3));

        let a = m(&[vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors, big(&[1, 3]));
        assert_eq!(cokernel(&a, 3).unwrap().to_string(), "Z^1 (+) Z_3");

        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&a).invariant_factors, big(&[2, 6, 12]));

        assert_eq!(cokernel(&IntMatrix::zeros(2, 0), 2).unwrap().to_string(), "Z^2");
        assert_eq!(cokernel(&IntMatrix::identity(3), 3).unwrap().to_string(), "0");
        assert!(cokernel(&IntMatrix::identity(3), 2).is_err());
    }

    #[test]
    fn group_rendering_and_normalisation() {
        let g = AbelianGroup::new(0, big(&[4, 6, 1]));
        assert_eq!(g.invariant_factors(), &big(&[2, 12])[..]);
        assert_eq!(g.to_string(), "Z_2 (+) Z_12");
        assert_eq!(AbelianGroup::cyclic(1), AbelianGroup::trivial());
        assert_eq!(AbelianGroup::new(2, vec![]).to_string(), "Z^2");
        assert_eq!(g.p_rank(2), 2);
        assert_eq!(g.p_rank(3), 1);
        assert_eq!(g.torsion_order(), BigInt::from(24));
    }

    #[test]
    fn coset_orders() {
        let a = m(&[vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
        let p = CokernelPresentation::new(&a);
        assert_eq!(p.coset_order(&big(&[3, -2, 0])).unwrap(), Some(BigInt::one()));
        assert_eq!(p.coset_order(&big(&[1, 0, 0])).unwrap(), None);
        let a = m(&[vec![2, 0], vec![0, 6]]);
        let p = CokernelPresentation::new(&a);
        assert_eq!(p.coset_order(&big(&[1, 0])).unwrap(), Some(BigInt::from(2)));
        assert_eq!(p.coset_order(&big(&[1, 1])).unwrap(), Some(BigInt::from(6)));
        assert_eq!(p.coset_order(&big(&[0, 4])).unwrap(), Some(BigInt::from(3)));
        let g = p.torsion_generator();
        assert!(p.coset_order(&g).unwrap().is_some());
    }

    #[test]
    fn solve_examples() {
        let a = m(&[vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
        let x = hermite_solve(&a, &big(&[6, -2, -3])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), big(&[6, -2, -3]));
        assert!(hermite_solve(&a, &big(&[1, 0, 0])).unwrap().is_none());
        assert!(hermite_solve(&m(&[vec![3, 3]]), &big(&[1])).unwrap().is_none());
        assert!(hermite_solve(&m(&[vec![3, 3]]), &big(&[-9])).unwrap().is_some());
        assert!(hermite_solve(&a, &big(&[1])).is_err());
    }

    #[test]
    fn rank_mod_p_examples() {
        let a = m(&[vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
        assert_eq!(rank_mod_p(&a, 2).unwrap(), 2);
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&a, 5).unwrap(), 2);
        assert!(matches!(rank_mod_p(&a, 4), Err(Error::NotPrime(4))));
        assert!(matches!(rank_mod_p(&a, 1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn triplet_round_trip() {
        let a = m(&[vec![0, 3], vec![-2, 0], vec![0, 0]]);
        let text = a.to_triplets();
        assert_eq!(text, "3 2\n0 1 3\n1 0 -2\n");
        assert_eq!(IntMatrix::from_triplets(&text).unwrap(), a);
        assert!(IntMatrix::from_triplets("2 2\n1 0 1\n0 0 1\n").is_err());
        assert!(IntMatrix::from_triplets("2 2\n2 0 1\n").is_err());
        assert!(IntMatrix::from_triplets("").is_err());
        assert!(IntMatrix::from_triplets("2 2\n0 0 x\n").is_err());
    }

    #[test]
    fn labels_are_checked() {
        let a = IntMatrix::zeros(1, 2);
        assert!(a.clone().with_labels(vec!["r".into()], vec!["c".into()]).is_err());
        assert!(a.clone().with_labels(vec!["r".into()], vec!["c".into(), "c".into()]).is_err());
        let a = a.with_labels(vec!["r".into()], vec!["c".into(), "d".into()]).unwrap();
        assert_eq!(a.transpose().row_labels().unwrap()[1], "d");
    }

    #[test]
    fn large_entries_survive() {
        let x = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let mut a = IntMatrix::zeros(2, 2);
        a.set(0, 0, x.clone() * 2u32);
        a.set(1, 1, x.clone() * 3u32);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors, vec![x.clone(), x * 6u32]);
    }

    proptest! {
        #[test]
        fn smith_matches_determinantal_divisors(a in arb_matrix()) {
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.invariant_factors.clone(), determinantal_invariants(&a));
            for w in snf.invariant_factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        #[test]
        fn smith_is_unimodular_invariant(a in arb_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random_unimodular(a.rows(), &mut rng);
            let v = random_unimodular(a.cols(), &mut rng);
            let b = u.mul(&a).unwrap().mul(&v).unwrap();
            prop_assert_eq!(smith_normal_form(&a), smith_normal_form(&b));
        }

        #[test]
        fn solve_agrees_with_coset_order(a in arb_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<BigInt> = (0..a.rows()).map(|_| BigInt::from(rng.gen_range(-8i64..=8))).collect();
            let solved = hermite_solve(&a, &v).unwrap();
            let order = coset_order(&a, &v).unwrap();
            prop_assert_eq!(solved.is_some(), order == Some(BigInt::one()));
            if let Some(x) = solved {
                prop_assert_eq!(a.mul_vec(&x), v.clone());
            }
            if let Some(n) = order {
                let scaled: Vec<BigInt> = v.iter().map(|x| x * &n).collect();
                prop_assert!(hermite_solve(&a, &scaled).unwrap().is_some());
            }
        }

        #[test]
        fn image_vectors_have_order_one(a in arb_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<BigInt> = (0..a.cols()).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect();
            let v = a.mul_vec(&x);
            prop_assert_eq!(coset_order(&a, &v).unwrap(), Some(BigInt::one()));
        }

        #[test]
        fn rank_mod_p_matches_smith(a in arb_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let snf = smith_normal_form(&a);
            let expected = snf.rank - AbelianGroup::new(0, snf.invariant_factors.clone()).p_rank(p);
            prop_assert_eq!(rank_mod_p(&a, p).unwrap(), expected);
        }

        #[test]
        fn triplets_round_trip(a in arb_matrix()) {
            prop_assert_eq!(IntMatrix::from_triplets(&a.to_triplets()).unwrap(), a);
        }
    }
}
