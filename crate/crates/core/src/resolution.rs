//! Differentials of `Hom(P_*(a, b), M)` for the hook resolution `P_*(a, b)`,
//! their block structure, and an on-disk matrix cache.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{resolution_compositions, Composition, GlobalConfig};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::tableaux::{theta, CoefficientModule, DividedWord, ExteriorWord, FreeVector, Tableau};
use crate::zlinalg::{smith_normal_form, IntMatrix};

/// Ordered standard basis of `Hom(P_i(a, b), M)`, grouped by weight.
#[derive(Clone, Debug)]
pub struct HomBasis {
    degree: u32,
    blocks: Vec<(Composition, Vec<Tableau>)>,
    elements: Vec<(usize, Tableau)>,
    index: BTreeMap<Tableau, usize>,
    separator: &'static str,
}

impl HomBasis {
    fn from_blocks(degree: u32, blocks: Vec<(Composition, Vec<Tableau>)>, separator: &'static str) -> Self {
        let mut elements = Vec::new();
        for (k, (_, basis)) in blocks.iter().enumerate() {
            elements.extend(basis.iter().map(|t| (k, t.clone())));
        }
        let index = elements.iter().enumerate().map(|(i, (_, t))| (t.clone(), i)).collect();
        HomBasis {
            degree,
            blocks,
            elements,
            index,
            separator,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn blocks(&self) -> &[(Composition, Vec<Tableau>)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, idx: usize) -> &Tableau {
        &self.elements[idx].1
    }

    pub fn composition(&self, idx: usize) -> &Composition {
        &self.blocks[self.elements[idx].0].0
    }

    pub fn elements(&self) -> impl Iterator<Item = &Tableau> {
        self.elements.iter().map(|(_, t)| t)
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements().map(|t| t.render(self.separator)).collect()
    }

    /// Coordinates of `v` in this basis.
    pub fn coordinates(&self, v: &FreeVector<Tableau>) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.len()];
        for (t, c) in v.iter() {
            let idx = self.index_of(t).ok_or_else(|| {
                Error::Dimension(format!("{} is not a basis element in degree {}", t.render(self.separator), self.degree))
            })?;
            out[idx] += c;
        }
        Ok(out)
    }

    /// The vector with the given coordinates.
    pub fn vector(&self, coords: &[BigInt]) -> FreeVector<Tableau> {
        let mut v = FreeVector::new();
        for (t, c) in self.elements().zip(coords) {
            v.add_term(t.clone(), c.clone());
        }
        v
    }

    /// The same elements listed in the order `perm` (a permutation of `0..len`).
    pub fn permuted(&self, perm: &[usize]) -> HomBasis {
        assert_eq!(perm.len(), self.len());
        let elements: Vec<(usize, Tableau)> = perm.iter().map(|&p| self.elements[p].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, (_, t))| (t.clone(), i)).collect();
        HomBasis {
            degree: self.degree,
            blocks: self.blocks.clone(),
            elements,
            index,
            separator: self.separator,
        }
    }
}

fn check_module(a: u32, b: u32, m: &CoefficientModule) -> Result<()> {
    if a == 0 {
        return Err(Error::InvalidHook { a, b });
    }
    if m.degree() != a + b {
        return Err(Error::DegreeMismatch {
            weight: a + b,
            module: m.degree(),
        });
    }
    Ok(())
}

fn basis_over(compositions: &[Composition], degree: u32, m: &CoefficientModule) -> Result<HomBasis> {
    let blocks = compositions
        .iter()
        .map(|c| Ok((c.clone(), m.weight_basis(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomBasis::from_blocks(degree, blocks, m.separator()))
}

/// Standard basis of `Hom(P_i(a, b), M)` in the global order.
pub fn hom_basis(a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<HomBasis> {
    check_module(a, b, m)?;
    basis_over(&resolution_compositions(a, b, i), i, m)
}

/// Matrix of `Σ_s (-1)^(s-1-shift) θ_s` from `cols` to `rows`, for
/// `s > shift`, keeping the merges accepted by `admissible`.
fn assemble<F>(cols: &HomBasis, rows: &HomBasis, m: &CoefficientModule, shift: usize, admissible: F) -> Result<IntMatrix>
where
    F: Fn(&Composition) -> bool + Sync,
{
    let columns = (0..cols.len())
        .into_par_iter()
        .map(|j| {
            let mu = cols.composition(j);
            let t = FreeVector::basis(cols.element(j).clone());
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for s in shift + 1..mu.len() {
                let nu = mu.merge(s).expect("s < len");
                if !admissible(&nu) {
                    continue;
                }
                let mut image = theta(s, &t, m)?;
                if (s - shift).is_multiple_of(2) {
                    image = image.scaled(&BigInt::from(-1));
                }
                for (x, c) in image.iter() {
                    let row = rows.index_of(x).ok_or_else(|| {
                        Error::Dimension(format!(
                            "θ_{s} of {} produced {}, which is not a row label",
                            cols.element(j).render(m.separator()),
                            x.render(m.separator())
                        ))
                    })?;
                    *acc.entry(row).or_default() += c;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = IntMatrix::zeros(rows.len(), cols.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, x) in col {
            out.set(i, j, x);
        }
    }
    out.with_labels(rows.labels(), cols.labels())
}

/// The differential `e^(i)(a, b, M)` between possibly reordered bases of
/// degrees `i - 1` (columns) and `i` (rows).
pub fn differential_between(a: u32, b: u32, i: u32, cols: &HomBasis, rows: &HomBasis, m: &CoefficientModule) -> Result<IntMatrix> {
    if i == 0 {
        return Err(Error::Malformed("differentials start in degree 1".into()));
    }
    let targets: HashSet<Composition> = resolution_compositions(a, b, i).into_iter().collect();
    assemble(cols, rows, m, 0, |nu| targets.contains(nu))
}

/// `e^(i)(a, b, M)`: columns indexed by `hom_basis(a, b, i - 1)`, rows by
/// `hom_basis(a, b, i)`.
pub fn differential_matrix(a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<IntMatrix> {
    if i == 0 {
        return Err(Error::Malformed("differentials start in degree 1".into()));
    }
    let cols = hom_basis(a, b, i - 1, m)?;
    let rows = hom_basis(a, b, i, m)?;
    differential_between(a, b, i, &cols, &rows, m)
}

/// Bump when the matrix construction or file format changes.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "WEYLEXT_CACHE";

/// Directory of differential matrices in sparse triplet form.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| Error::CacheIo {
            path: dir.clone(),
            source,
        })?;
        Ok(MatrixCache { dir })
    }

    /// `$WEYLEXT_CACHE` if set, else `fallback`, else no cache.
    pub fn from_env_or(fallback: Option<PathBuf>) -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV).map(PathBuf::from).or(fallback) {
            Some(dir) => Ok(Some(MatrixCache::new(dir)?)),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, a: u32, b: u32, i: u32, m: &CoefficientModule) -> PathBuf {
        let n = GlobalConfig::for_leg(b).n;
        self.dir
            .join(format!("e{i}_a{a}_b{b}_{}_n{n}.v{CACHE_FORMAT_VERSION}.txt", m.descriptor()))
    }

    /// The stored matrix, if present, readable and of the expected shape.
    pub fn load(&self, a: u32, b: u32, i: u32, m: &CoefficientModule, rows: usize, cols: usize) -> Option<IntMatrix> {
        let text = fs::read_to_string(self.path(a, b, i, m)).ok()?;
        let mat = IntMatrix::from_triplets(&text).ok()?;
        (mat.rows() == rows && mat.cols() == cols).then_some(mat)
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place.
    pub fn store(&self, a: u32, b: u32, i: u32, m: &CoefficientModule, mat: &IntMatrix) -> Result<()> {
        let path = self.path(a, b, i, m);
        let io = |source| Error::CacheIo {
            path: path.clone(),
            source,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(mat.to_triplets().as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

/// [`differential_matrix`] through an optional cache.
pub fn cached_differential(cache: Option<&MatrixCache>, a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<IntMatrix> {
    let Some(cache) = cache else {
        return differential_matrix(a, b, i, m);
    };
    if i == 0 {
        return Err(Error::Malformed("differentials start in degree 1".into()));
    }
    let cols = hom_basis(a, b, i - 1, m)?;
    let rows = hom_basis(a, b, i, m)?;
    if let Some(mat) = cache.load(a, b, i, m, rows.len(), cols.len()) {
        return mat.with_labels(rows.labels(), cols.labels());
    }
    let mat = differential_between(a, b, i, &cols, &rows, m)?;
    cache.store(a, b, i, m, &mat)?;
    Ok(mat)
}

fn first_nonzero(mat: &IntMatrix) -> Option<(usize, usize)> {
    (0..mat.rows())
        .flat_map(|r| (0..mat.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !mat.get(r, c).is_zero())
}

/// Checks `e^(i+1) e^(i) = 0` for `1 <= i < up_to`.
pub fn verify_complex(a: u32, b: u32, m: &CoefficientModule, up_to: u32) -> Result<Report> {
    let mut report = Report::new();
    for i in 1..up_to {
        let lower = differential_matrix(a, b, i, m)?;
        let upper = differential_matrix(a, b, i + 1, m)?;
        let prod = upper.mul(&lower)?;
        let name = format!("d∘d=0 a={a} b={b} M={m} i={i}");
        match first_nonzero(&prod) {
            None => report.push(Check::pass(name, format!("{}x{} product vanishes", prod.rows(), prod.cols()))),
            Some((r, c)) => report.push(Check::fail(
                name,
                format!(
                    "entry {} at row {} of the column for {}",
                    prod.get(r, c),
                    upper.row_labels().map_or(r.to_string(), |l| l[r].clone()),
                    lower.col_labels().map_or(c.to_string(), |l| l[c].clone()),
                ),
            )),
        }
    }
    Ok(report)
}

/// Rational ranks: `rank e^(i) + rank e^(i+1) = |hom_basis(i)|` for
/// `0 <= i <= b` (with `e^(0) = 0`), valid whenever the rational
/// cohomology of the complex vanishes.
pub fn rational_exactness(a: u32, b: u32, m: &CoefficientModule) -> Result<Report> {
    let mut ranks = vec![0usize];
    for i in 1..=b + 1 {
        ranks.push(smith_normal_form(&differential_matrix(a, b, i, m)?).rank);
    }
    let mut report = Report::new();
    for i in 0..=b {
        let dim = hom_basis(a, b, i, m)?.len();
        let lhs = ranks[i as usize] + ranks[i as usize + 1];
        report.push(Check::new(
            format!("rational exactness a={a} b={b} M={m} i={i}"),
            lhs == dim,
            format!("{} + {} vs {}", ranks[i as usize], ranks[i as usize + 1], dim),
        ));
    }
    Ok(report)
}

fn compare_blocks(name: &str, got: &IntMatrix, want: &IntMatrix) -> Check {
    if got.rows() != want.rows() || got.cols() != want.cols() {
        return Check::fail(
            name,
            format!("shape {}x{} vs {}x{}", got.rows(), got.cols(), want.rows(), want.cols()),
        );
    }
    for r in 0..got.rows() {
        for c in 0..got.cols() {
            if got.get(r, c) != want.get(r, c) {
                return Check::fail(
                    name,
                    format!("entry ({r},{c}) is {} but expected {}", got.get(r, c), want.get(r, c)),
                );
            }
        }
    }
    Check::pass(name, format!("{}x{}", got.rows(), got.cols()))
}

fn labels_agree(name: &str, got: &HomBasis, idx: &[usize], want: &HomBasis) -> Check {
    let ok = idx.len() == want.len() && idx.iter().zip(want.elements()).all(|(&k, t)| got.element(k) == t);
    Check::new(name, ok, format!("{} elements", idx.len()))
}

fn is_prefix_range(idx: &[usize]) -> bool {
    idx.iter().enumerate().all(|(k, &x)| k == x)
}

/// Top-right block of the recursion: the `θ_1` part of the differential from
/// the `a_1 = a` columns to the `a_1 > a` rows.
pub fn diagonal_block(a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<IntMatrix> {
    let cols = hom_basis(a, b, i - 1, m)?;
    let rows = hom_basis(a, b, i, m)?;
    let cols = restrict(&cols, |mu| mu.first() == Some(a));
    let rows = restrict(&rows, |mu| mu.first() != Some(a));
    let targets: HashSet<Composition> = resolution_compositions(a, b, i).into_iter().collect();
    assemble(&cols, &rows, m, 0, |nu| nu.first() != Some(a) && targets.contains(nu))
}

fn restrict<F: Fn(&Composition) -> bool>(basis: &HomBasis, keep: F) -> HomBasis {
    let blocks = basis.blocks().iter().filter(|(c, _)| keep(c)).cloned().collect();
    HomBasis::from_blocks(basis.degree, blocks, basis.separator)
}

fn prefixed(a: u32, tail: &[Composition]) -> Vec<Composition> {
    tail.iter()
        .map(|c| {
            let mut parts = vec![a];
            parts.extend_from_slice(c.parts());
            Composition::new(parts).expect("positive parts")
        })
        .collect()
}

/// `e^(i)(1, b - 1, M_a)`, where `M_a` is spanned by the basis elements with
/// exactly `a` letters `1`, acted on through the letters `2, 3, ...`.
pub fn restricted_differential(a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<IntMatrix> {
    if b == 0 || i == 0 {
        return Err(Error::Malformed("restriction needs b >= 1 and i >= 1".into()));
    }
    let cols = basis_over(&prefixed(a, &resolution_compositions(1, b - 1, i - 1)), i - 1, m)?;
    let rows = basis_over(&prefixed(a, &resolution_compositions(1, b - 1, i)), i, m)?;
    let targets: HashSet<Composition> = resolution_compositions(1, b - 1, i).into_iter().collect();
    assemble(&cols, &rows, m, 1, |nu| targets.contains(&nu.tail()))
}

/// Block form of `e^(i)(a, b, M)`: splitting rows and columns by
/// `a_1 > a` / `a_1 = a`, the matrix is
/// `[[e^(i-1)(a+1, b-1, M), B^i], [0, -e^(i)(1, b-1, M_a)]]`
/// (for `i = 1` only the right column is present).
pub fn block_check(a: u32, b: u32, i: u32, m: &CoefficientModule) -> Result<Report> {
    if i == 0 || b == 0 {
        return Err(Error::Malformed("block recursion needs i >= 1 and b >= 1".into()));
    }
    let tag = format!("a={a} b={b} i={i} M={m}");
    let cols = hom_basis(a, b, i - 1, m)?;
    let rows = hom_basis(a, b, i, m)?;
    let e = differential_between(a, b, i, &cols, &rows, m)?;
    let split = |basis: &HomBasis| {
        let hi: Vec<usize> = (0..basis.len()).filter(|&k| basis.composition(k).first() != Some(a)).collect();
        let lo: Vec<usize> = (0..basis.len()).filter(|&k| basis.composition(k).first() == Some(a)).collect();
        (hi, lo)
    };
    let (r_hi, r_lo) = split(&rows);
    let (c_hi, c_lo) = split(&cols);
    let mut report = Report::new();
    report.push(Check::new(
        format!("recursion ordering {tag}"),
        is_prefix_range(&r_hi) && is_prefix_range(&c_hi),
        format!("{} + {} rows, {} + {} columns", r_hi.len(), r_lo.len(), c_hi.len(), c_lo.len()),
    ));
    if i == 1 {
        report.push(Check::new(format!("no left column {tag}"), c_hi.is_empty(), ""));
    } else {
        let sub_cols = hom_basis(a + 1, b - 1, i - 2, m)?;
        let sub_rows = hom_basis(a + 1, b - 1, i - 1, m)?;
        report.push(labels_agree(&format!("top-left columns {tag}"), &cols, &c_hi, &sub_cols));
        report.push(labels_agree(&format!("top-left rows {tag}"), &rows, &r_hi, &sub_rows));
        let want = differential_between(a + 1, b - 1, i - 1, &sub_cols, &sub_rows, m)?;
        report.push(compare_blocks(&format!("top-left block {tag}"), &e.select(&r_hi, &c_hi), &want));
        report.push(Check::new(
            format!("bottom-left zero {tag}"),
            e.select(&r_lo, &c_hi).is_zero(),
            "",
        ));
    }
    report.push(compare_blocks(
        &format!("diagonal map block {tag}"),
        &e.select(&r_hi, &c_lo),
        &diagonal_block(a, b, i, m)?,
    ));
    let bottom = restricted_differential(a, b, i, m)?.negated();
    report.push(compare_blocks(&format!("bottom-right block {tag}"), &e.select(&r_lo, &c_lo), &bottom));
    Ok(report)
}

/// Removes every letter `1` and lowers the others by one.
pub fn drop_first_letter(t: &Tableau) -> Tableau {
    let d = t
        .d
        .entries()
        .iter()
        .filter(|&&(l, _)| l > 1)
        .map(|&(l, e)| (l - 1, e))
        .collect();
    let e = t.e.letters().iter().filter(|&&l| l > 1).map(|&l| l - 1).collect();
    Tableau::new(
        DividedWord::new(d).expect("relabelling keeps order"),
        ExteriorWord::new(e).expect("relabelling keeps order"),
    )
}

/// Block form for `M = D_{a+k} ⊗ Λ^{b-k}` and `i >= 2`, with both bases split
/// into `B` (`a_1 > a`), `B_1` (`a_1 = a`, one `1` in the exterior part) and
/// `B_0` (`a_1 = a`, no `1` in the exterior part):
/// `[[A, *, *], [0, B, 0], [0, 0, C]]` with `A = e^(i-1)(a+1, b-1, M)`,
/// `B = -e^(i)(1, b-1, D_{k+1} ⊗ Λ^{b-k-1})` and `C = -e^(i)(1, b-1, D_k ⊗ Λ^{b-k})`,
/// the last two compared through [`drop_first_letter`].
pub fn skew_block_check(a: u32, b: u32, k: u32, i: u32) -> Result<Report> {
    if i < 2 || b == 0 {
        return Err(Error::Malformed("skew block form needs i >= 2 and b >= 1".into()));
    }
    if k > b {
        return Err(Error::InvalidShift { k, b });
    }
    let m = CoefficientModule::Skew { m: a + k, l: b - k };
    let tag = format!("a={a} b={b} k={k} i={i}");
    let cols = hom_basis(a, b, i - 1, &m)?;
    let rows = hom_basis(a, b, i, &m)?;
    let e = differential_between(a, b, i, &cols, &rows, &m)?;
    let split = |basis: &HomBasis| {
        let mut parts = (Vec::new(), Vec::new(), Vec::new());
        for idx in 0..basis.len() {
            if basis.composition(idx).first() != Some(a) {
                parts.0.push(idx);
            } else if basis.element(idx).e.contains(1) {
                parts.1.push(idx);
            } else {
                parts.2.push(idx);
            }
        }
        parts
    };
    let (r_hi, r_1, r_0) = split(&rows);
    let (c_hi, c_1, c_0) = split(&cols);
    let mut report = Report::new();

    let sub_cols = hom_basis(a + 1, b - 1, i - 2, &m)?;
    let sub_rows = hom_basis(a + 1, b - 1, i - 1, &m)?;
    let want = differential_between(a + 1, b - 1, i - 1, &sub_cols, &sub_rows, &m)?;
    report.push(compare_blocks(&format!("block A {tag}"), &e.select(&r_hi, &c_hi), &want));

    for (name, r, c) in [
        ("middle-left", &r_1, &c_hi),
        ("bottom-left", &r_0, &c_hi),
        ("bottom-middle", &r_0, &c_1),
        ("middle-right", &r_1, &c_0),
    ] {
        let block = e.select(r, c);
        report.push(Check::new(
            format!("{name} zero {tag}"),
            block.is_zero(),
            format!("{}x{}", block.rows(), block.cols()),
        ));
    }

    let mut relabelled = |name: &str, r: &[usize], c: &[usize], sub: Option<CoefficientModule>| -> Result<()> {
        let name = format!("{name} {tag}");
        let Some(sub_m) = sub else {
            report.push(Check::new(name, r.is_empty() && c.is_empty(), "no exterior 1 possible"));
            return Ok(());
        };
        let sc = hom_basis(1, b - 1, i - 1, &sub_m)?;
        let sr = hom_basis(1, b - 1, i, &sub_m)?;
        let target = differential_between(1, b - 1, i, &sc, &sr, &sub_m)?;
        let map = |basis: &HomBasis, idx: &[usize], onto: &HomBasis| -> Option<Vec<usize>> {
            let image: Option<Vec<usize>> = idx.iter().map(|&x| onto.index_of(&drop_first_letter(basis.element(x)))).collect();
            image.filter(|v| v.len() == onto.len() && v.iter().collect::<HashSet<_>>().len() == v.len())
        };
        let (Some(fr), Some(fc)) = (map(&rows, r, &sr), map(&cols, c, &sc)) else {
            report.push(Check::fail(name, "relabelling is not a bijection onto the smaller basis"));
            return Ok(());
        };
        let got = e.select(r, c);
        let want = target.select(&fr, &fc).negated();
        report.push(compare_blocks(&name, &got, &want));
        Ok(())
    };
    let b_module = (k < b).then(|| CoefficientModule::Skew { m: k + 1, l: b - k - 1 });
    relabelled("block B", &r_1, &c_1, b_module)?;
    relabelled("block C", &r_0, &c_0, Some(CoefficientModule::Skew { m: k, l: b - k }))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Hook;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(m: u32) -> CoefficientModule {
        CoefficientModule::Skew { m, l: 0 }
    }

    fn weyl(a: u32, b: u32) -> CoefficientModule {
        CoefficientModule::Weyl(Hook::new(a, b).unwrap())
    }

    fn entries(m: &IntMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| i64::try_from(m.get(r, c)).unwrap()).collect())
            .collect()
    }

    #[test]
    fn hom_basis_examples() {
        let h = hom_basis(2, 2, 0, &d(4)).unwrap();
        assert_eq!(h.blocks().len(), 1);
        assert_eq!(h.blocks()[0].0.parts(), &[2, 1, 1]);
        assert_eq!(h.labels(), vec!["1^(2)23 ⊗ ∅"]);

        let h = hom_basis(1, 3, 1, &d(4)).unwrap();
        let comps: Vec<Vec<u32>> = h.blocks().iter().map(|(c, _)| c.parts().to_vec()).collect();
        assert_eq!(comps, vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
        assert_eq!(h.len(), 3);

        assert!(hom_basis(2, 3, 4, &d(5)).unwrap().is_empty());
        assert!(hom_basis(2, 3, 1, &d(4)).is_err());
    }

    #[test]
    fn first_differential_of_exterior_power() {
        for k in 1..=6u32 {
            let e = differential_matrix(1, k, 1, &d(k + 1)).unwrap();
            let want: Vec<Vec<i64>> = (0..k).map(|s| vec![if s % 2 == 0 { 2 } else { -2 }]).collect();
            assert_eq!(entries(&e), want, "k={k}");
        }
    }

    #[test]
    fn second_differential_fixtures() {
        let e = differential_matrix(1, 2, 2, &d(3)).unwrap();
        assert_eq!(entries(&e), vec![vec![3, 3]]);
        let e = differential_matrix(1, 3, 2, &d(4)).unwrap();
        assert_eq!(entries(&e), vec![vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
        assert_eq!(e.row_labels().unwrap()[0], "1^(3)2 ⊗ ∅");
    }

    #[test]
    fn diagonal_block_of_exterior_power() {
        for k in 2..=6u32 {
            let bl = diagonal_block(1, k, 2, &d(k + 1)).unwrap();
            let mut want = vec![vec![0i64; (k - 1) as usize]; (k - 1) as usize];
            for (s, row) in want.iter_mut().enumerate() {
                row[s] = if s == 0 { 3 } else { 2 };
            }
            assert_eq!(entries(&bl), want, "k={k}");
        }
    }

    #[test]
    fn complexes_close() {
        let cases = [
            (1, 4, d(5)),
            (2, 5, weyl(4, 3)),
            (2, 3, CoefficientModule::Skew { m: 3, l: 2 }),
            (3, 4, weyl(5, 2)),
        ];
        for (a, b, m) in cases {
            let r = verify_complex(a, b, &m, b).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_complex(2, 1, &d(3), 1).unwrap().is_empty());
    }

    #[test]
    fn rational_ranks_are_exact() {
        for (a, b) in [(1, 3), (2, 3), (2, 4)] {
            for k in 1..=b {
                let r = rational_exactness(a, b, &weyl(a + k, b - k)).unwrap();
                assert!(r.passed(), "{r}");
                let r = rational_exactness(a, b, &CoefficientModule::Skew { m: a + k, l: b - k }).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        // Hom(Δ(h), Δ(h)) is free of rank one, so degree 0 is not exact
        let r = rational_exactness(2, 3, &weyl(2, 3)).unwrap();
        assert!(!r.checks[0].passed);
        assert!(r.checks[1..].iter().all(|c| c.passed));
    }

    #[test]
    fn recursion_blocks() {
        for a in 1..=2u32 {
            for b in 2..=4u32 {
                for i in 1..=b {
                    for k in 0..=b {
                        let r = block_check(a, b, i, &weyl(a + k, b - k)).unwrap();
                        assert!(r.passed(), "{r}");
                    }
                }
            }
        }
        let r = block_check(1, 3, 2, &d(4)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn skew_recursion_blocks() {
        let r = skew_block_check(2, 4, 3, 2).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("middle-right")));
        for k in 0..=3 {
            let r = skew_block_check(1, 3, k, 2).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(skew_block_check(1, 3, 1, 1).is_err());
        assert!(skew_block_check(1, 3, 4, 2).is_err());
    }

    #[test]
    fn relabelling() {
        let t = Tableau::new(
            DividedWord::new(vec![(1, 2), (3, 1)]).unwrap(),
            ExteriorWord::new(vec![1, 2, 4]).unwrap(),
        );
        assert_eq!(drop_first_letter(&t).render(" ⊗ "), "2 ⊗ 13");
    }

    #[test]
    fn invariants_survive_reordering() {
        let m = weyl(4, 1);
        let (a, b, i) = (2, 3, 2);
        let cols = hom_basis(a, b, i - 1, &m).unwrap();
        let rows = hom_basis(a, b, i, &m).unwrap();
        let base = smith_normal_form(&differential_between(a, b, i, &cols, &rows, &m).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let mut pc: Vec<usize> = (0..cols.len()).collect();
            let mut pr: Vec<usize> = (0..rows.len()).collect();
            pc.shuffle(&mut rng);
            pr.shuffle(&mut rng);
            let e = differential_between(a, b, i, &cols.permuted(&pc), &rows.permuted(&pr), &m).unwrap();
            assert_eq!(smith_normal_form(&e), base);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let h = hom_basis(1, 3, 1, &d(4)).unwrap();
        let v = h.vector(&crate::zlinalg::int_vec(&[1, -2, 5]));
        assert_eq!(h.coordinates(&v).unwrap(), crate::zlinalg::int_vec(&[1, -2, 5]));
        let stray = FreeVector::basis(h.element(0).clone());
        assert!(hom_basis(1, 3, 2, &d(4)).unwrap().coordinates(&stray).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::new(dir.path()).unwrap();
        let m = weyl(3, 2);
        let fresh = differential_matrix(1, 4, 2, &m).unwrap();
        let first = cached_differential(Some(&cache), 1, 4, 2, &m).unwrap();
        assert!(cache.path(1, 4, 2, &m).exists());
        let second = cached_differential(Some(&cache), 1, 4, 2, &m).unwrap();
        assert_eq!(first, fresh);
        assert_eq!(second, fresh);
        let name = cache.path(1, 4, 2, &m);
        assert_eq!(name.file_name().unwrap().to_str().unwrap(), "e2_a1_b4_weyl-3-2_n5.v1.txt");
        // a damaged file is ignored and replaced
        fs::write(&name, "garbage").unwrap();
        assert_eq!(cached_differential(Some(&cache), 1, 4, 2, &m).unwrap(), fresh);
        assert_eq!(fs::read_to_string(&name).unwrap(), fresh.to_triplets());
    }
}
