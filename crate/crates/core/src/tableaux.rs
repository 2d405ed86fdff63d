//! Standard bases of weight spaces of `D_m ⊗ Λ^l` and of hook Weyl modules,
//! the hook straightening law, the letter-merge maps and the lower map
//! `D_m ⊗ Λ^l -> D_{m-1} ⊗ Λ^{l+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, Composition, Hook};
use crate::error::{Error, Result};

pub type Letter = u8;

/// A basis word `i_1^(a_1) ... i_t^(a_t)` of a divided power, letters strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DividedWord {
    entries: Vec<(Letter, u32)>,
}

impl DividedWord {
    pub fn new(entries: Vec<(Letter, u32)>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0].0 < w[1].0);
        if !increasing || entries.iter().any(|&(l, e)| e == 0 || l == 0) {
            return Err(Error::Malformed(format!("not a divided-power word: {entries:?}")));
        }
        Ok(DividedWord { entries })
    }

    /// Word whose exponent of letter `i + 1` is `content[i]`.
    pub fn from_content(content: &[u32]) -> Self {
        let entries = content
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| ((i + 1) as Letter, e))
            .collect();
        DividedWord { entries }
    }

    pub fn entries(&self) -> &[(Letter, u32)] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, letter: Letter) -> u32 {
        self.entries
            .iter()
            .find(|&&(l, _)| l == letter)
            .map_or(0, |&(_, e)| e)
    }

    pub fn min_letter(&self) -> Option<Letter> {
        self.entries.first().map(|&(l, _)| l)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.entries.last().map(|&(l, _)| l)
    }

    /// Weakly increasing letter sequence, each letter repeated by its exponent.
    pub fn flat(&self) -> Vec<Letter> {
        let mut v = Vec::with_capacity(self.degree() as usize);
        for &(l, e) in &self.entries {
            v.extend(std::iter::repeat_n(l, e as usize));
        }
        v
    }

    /// Adds `delta` to the exponent of `letter`; `None` if it would go negative.
    pub fn adjusted(&self, letter: Letter, delta: i64) -> Option<DividedWord> {
        let mut entries = self.entries.clone();
        match entries.binary_search_by_key(&letter, |&(l, _)| l) {
            Ok(pos) => {
                let e = entries[pos].1 as i64 + delta;
                if e < 0 {
                    return None;
                }
                if e == 0 {
                    entries.remove(pos);
                } else {
                    entries[pos].1 = e as u32;
                }
            }
            Err(pos) => {
                if delta < 0 {
                    return None;
                }
                if delta > 0 {
                    entries.insert(pos, (letter, delta as u32));
                }
            }
        }
        Some(DividedWord { entries })
    }
}

/// A strictly increasing exterior word `j_1 ... j_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExteriorWord {
    letters: Vec<Letter>,
}

impl ExteriorWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if !letters.windows(2).all(|w| w[0] < w[1]) || letters.contains(&0) {
            return Err(Error::Malformed(format!("not an exterior word: {letters:?}")));
        }
        Ok(ExteriorWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.letters.binary_search(&letter).is_ok()
    }
}

/// Result of sorting a product of exterior generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    Signed(i32, ExteriorWord),
}

/// Sort `letters` in the exterior algebra: zero on a repeat, otherwise the
/// sorted word with the sign of the sorting permutation.
pub fn normalize_exterior(letters: &[Letter]) -> Normalized {
    let mut v = letters.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Normalized::Zero;
    }
    Normalized::Signed(sign, ExteriorWord { letters: v })
}

/// A pair `d ⊗ e`. For Weyl coefficients the same pair denotes the tableau
/// `d / e` (top row `d`, column `e`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub d: DividedWord,
    pub e: ExteriorWord,
}

pub type SkewBasisElement = Tableau;
pub type WeylBasisElement = Tableau;

impl Tableau {
    pub fn new(d: DividedWord, e: ExteriorWord) -> Self {
        Tableau { d, e }
    }

    /// Letter multiplicities of `d` and `e` combined, indexed from letter 1.
    pub fn content(&self) -> Vec<u32> {
        let max = self.max_letter().unwrap_or(0) as usize;
        let mut c = vec![0u32; max];
        for &(l, e) in self.d.entries() {
            c[l as usize - 1] += e;
        }
        for &l in self.e.letters() {
            c[l as usize - 1] += 1;
        }
        c
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.d.max_letter().max(self.e.letters().last().copied())
    }

    /// Standard as a hook tableau: the first letter of the top row is below
    /// every column letter.
    pub fn is_standard(&self) -> bool {
        match (self.d.min_letter(), self.e.letters().first()) {
            (_, None) => true,
            (Some(i), Some(&j)) => i < j,
            (None, Some(_)) => false,
        }
    }

    fn flat_key(&self) -> Vec<Letter> {
        let mut k = self.d.flat();
        k.extend_from_slice(self.e.letters());
        k
    }

    /// Rendering with the divided and exterior parts joined by `sep`.
    pub fn render(&self, sep: &str) -> String {
        format!("{}{}{}", self.d, sep, self.e)
    }

    pub fn render_skew(&self) -> String {
        self.render(" ⊗ ")
    }

    pub fn render_weyl(&self) -> String {
        self.render("/")
    }
}

impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flat_key()
            .cmp(&other.flat_key())
            .then_with(|| self.d.degree().cmp(&other.d.degree()))
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_letter(f: &mut fmt::Formatter<'_>, l: Letter) -> fmt::Result {
    if l < 10 {
        write!(f, "{l}")
    } else {
        write!(f, "[{l}]")
    }
}

impl fmt::Display for DividedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "∅");
        }
        for &(l, e) in &self.entries {
            write_letter(f, l)?;
            if e > 1 {
                write!(f, "^({e})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExteriorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "∅");
        }
        for &l in &self.letters {
            write_letter(f, l)?;
        }
        Ok(())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_skew())
    }
}

/// Finite integer combination of basis labels. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector<T: Ord> {
    terms: BTreeMap<T, BigInt>,
}

impl<T: Ord> Default for FreeVector<T> {
    fn default() -> Self {
        FreeVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> FreeVector<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(t: T) -> Self {
        let mut v = Self::new();
        v.add_term(t, BigInt::one());
        v
    }

    pub fn add_term(&mut self, t: T, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FreeVector<T>, c: &BigInt) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> FreeVector<T> {
        let mut v = FreeVector::new();
        v.add_scaled(self, c);
        v
    }

    pub fn coefficient(&self, t: &T) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Ord + Clone> std::ops::Sub for &FreeVector<T> {
    type Output = FreeVector<T>;

    fn sub(self, rhs: Self) -> FreeVector<T> {
        let mut v = self.clone();
        v.add_scaled(rhs, &BigInt::from(-1));
        v
    }
}

impl FreeVector<Tableau> {
    /// Render as a signed sum, using `sep` between the two parts of each tableau.
    pub fn render(&self, sep: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if !mag.is_one() {
                s.push_str(&format!("{mag}·"));
            }
            s.push_str(&t.render(sep));
        }
        s
    }
}

/// Coefficient module: `D_m ⊗ Λ^l` or a hook Weyl module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientModule {
    Skew { m: u32, l: u32 },
    Weyl(Hook),
}

impl CoefficientModule {
    pub fn degree(&self) -> u32 {
        match *self {
            CoefficientModule::Skew { m, l } => m + l,
            CoefficientModule::Weyl(h) => h.degree(),
        }
    }

    /// Standard basis of the weight space of weight `mu`, sorted.
    pub fn weight_basis(&self, mu: &Composition) -> Result<Vec<Tableau>> {
        match *self {
            CoefficientModule::Skew { m, l } => skew_weight_basis(mu, m, l),
            CoefficientModule::Weyl(h) => weyl_weight_basis(mu, &h),
        }
    }

    pub fn is_weyl(&self) -> bool {
        matches!(self, CoefficientModule::Weyl(_))
    }

    /// Short file-name safe descriptor, e.g. `skew-5-1` or `weyl-4-2`.
    pub fn descriptor(&self) -> String {
        match *self {
            CoefficientModule::Skew { m, l } => format!("skew-{m}-{l}"),
            CoefficientModule::Weyl(h) => format!("weyl-{}-{}", h.arm(), h.leg()),
        }
    }

    /// Separator used when rendering elements of this module.
    pub fn separator(&self) -> &'static str {
        if self.is_weyl() {
            "/"
        } else {
            " ⊗ "
        }
    }
}

impl fmt::Display for CoefficientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoefficientModule::Skew { m, l } => write!(f, "D_{m}⊗Λ^{l}"),
            CoefficientModule::Weyl(h) => write!(f, "Δ{h}"),
        }
    }
}

/// Support subsets of size `size`, in increasing lexicographic order.
fn subsets(support: &[Letter], size: usize) -> Vec<Vec<Letter>> {
    fn go(support: &[Letter], size: usize, start: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..support.len() {
            if support.len() - i < size - cur.len() {
                break;
            }
            cur.push(support[i]);
            go(support, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(support, size, 0, &mut Vec::new(), &mut out);
    out
}

fn split_weight(mu: &Composition, column_size: usize) -> Vec<Tableau> {
    let support: Vec<Letter> = mu
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, _)| (i + 1) as Letter)
        .collect();
    subsets(&support, column_size)
        .into_iter()
        .map(|col| {
            let mut content = mu.parts().to_vec();
            for &l in &col {
                content[l as usize - 1] -= 1;
            }
            Tableau {
                d: DividedWord::from_content(&content),
                e: ExteriorWord { letters: col },
            }
        })
        .collect()
}

/// Basis of the `mu` weight space of `D_m ⊗ Λ^l`: all `d ⊗ e` of combined content `mu`.
pub fn skew_weight_basis(mu: &Composition, m: u32, l: u32) -> Result<Vec<Tableau>> {
    if mu.sum() != m + l {
        return Err(Error::DegreeMismatch {
            weight: mu.sum(),
            module: m + l,
        });
    }
    let mut v = split_weight(mu, l as usize);
    v.sort();
    Ok(v)
}

/// Standard hook tableaux of shape `h` and content `mu`.
pub fn weyl_weight_basis(mu: &Composition, h: &Hook) -> Result<Vec<Tableau>> {
    if mu.sum() != h.degree() {
        return Err(Error::DegreeMismatch {
            weight: mu.sum(),
            module: h.degree(),
        });
    }
    let mut v: Vec<Tableau> = split_weight(mu, h.leg() as usize)
        .into_iter()
        .filter(Tableau::is_standard)
        .collect();
    v.sort();
    Ok(v)
}

/// Expand the tableau `top / col` (column given unsorted) in the standard basis.
pub fn straighten(top: &DividedWord, col: &[Letter]) -> Result<FreeVector<Tableau>> {
    let r = top.degree() as u64 + col.len() as u64;
    let fuel = 4u64.saturating_pow(r.min(31) as u32);
    let mut steps = 0u64;
    let mut out = FreeVector::new();
    let mut work = vec![(BigInt::one(), top.clone(), col.to_vec())];
    while let Some((coef, top, raw)) = work.pop() {
        steps += 1;
        if steps > fuel {
            return Err(Error::FuelExhausted(fuel));
        }
        let (sign, col) = match normalize_exterior(&raw) {
            Normalized::Zero => continue,
            Normalized::Signed(s, w) => (s, w),
        };
        let coef = coef * sign;
        let t = Tableau { d: top, e: col };
        if t.is_standard() {
            out.add_term(t, coef);
            continue;
        }
        let i1 = t
            .d
            .min_letter()
            .ok_or_else(|| Error::Malformed(format!("empty top row in {}", t.render_weyl())))?;
        let j1 = t.e.letters()[0];
        let rest = &t.e.letters()[1..];
        let neg = -coef;
        if j1 == i1 {
            for &(is, _) in t.d.entries().iter().skip(1) {
                let new_top = t
                    .d
                    .adjusted(i1, 1)
                    .and_then(|w| w.adjusted(is, -1))
                    .expect("letter present");
                let mut new_col = vec![is];
                new_col.extend_from_slice(rest);
                work.push((neg.clone(), new_top, new_col));
            }
        } else {
            // j1 < i1, so j1 is absent from the top row
            let raised = t.d.adjusted(j1, 1).expect("insertion");
            for &(is, _) in t.d.entries() {
                let new_top = raised.adjusted(is, -1).expect("letter present");
                let mut new_col = vec![is];
                new_col.extend_from_slice(rest);
                work.push((neg.clone(), new_top, new_col));
            }
        }
    }
    Ok(out)
}

/// Merge letters `s` and `s + 1` of a single tableau in `D ⊗ Λ`, shifting
/// larger letters down. Returns the coefficient and unsorted image, or
/// `None` when the image vanishes.
fn merge_letters(t: &Tableau, s: Letter) -> Option<(BigInt, DividedWord, Vec<Letter>)> {
    if t.e.contains(s) && t.e.contains(s + 1) {
        return None;
    }
    let x = t.d.exponent(s);
    let y = t.d.exponent(s + 1);
    let coef = binomial((x + y) as u64, x as i64);
    let mut entries = Vec::with_capacity(t.d.entries().len());
    for &(l, e) in t.d.entries() {
        if l < s {
            entries.push((l, e));
        }
    }
    if x + y > 0 {
        entries.push((s, x + y));
    }
    for &(l, e) in t.d.entries() {
        if l > s + 1 {
            entries.push((l - 1, e));
        }
    }
    let col = t
        .e
        .letters()
        .iter()
        .map(|&l| if l > s { l - 1 } else { l })
        .collect();
    Some((coef, DividedWord { entries }, col))
}

/// The letter-merge map `θ_s` applied to a weight vector of `module`.
///
/// A term whose largest letter is at most `s` has a weight with at most `s`
/// parts and maps to zero.
pub fn theta(s: usize, v: &FreeVector<Tableau>, module: &CoefficientModule) -> Result<FreeVector<Tableau>> {
    let mut out = FreeVector::new();
    if s == 0 {
        return Ok(out);
    }
    for (t, c) in v.iter() {
        if (t.max_letter().unwrap_or(0) as usize) <= s {
            continue;
        }
        let Some((k, d, col)) = merge_letters(t, s as Letter) else {
            continue;
        };
        let scale = c * k;
        if module.is_weyl() {
            out.add_scaled(&straighten(&d, &col)?, &scale);
        } else {
            // letter order in the column is unchanged by the relabelling
            out.add_term(
                Tableau {
                    d,
                    e: ExteriorWord { letters: col },
                },
                scale,
            );
        }
    }
    Ok(out)
}

/// Comultiply one letter off the divided part and wedge it in front of the
/// exterior part: `D_m ⊗ Λ^l -> D_{m-1} ⊗ Λ^{l+1}`.
pub fn lower_map(x: &Tableau) -> FreeVector<Tableau> {
    let mut out = FreeVector::new();
    for &(l0, _) in x.d.entries() {
        let d = x.d.adjusted(l0, -1).expect("letter present");
        let mut raw = vec![l0];
        raw.extend_from_slice(x.e.letters());
        if let Normalized::Signed(sign, e) = normalize_exterior(&raw) {
            out.add_term(Tableau { d, e }, BigInt::from(sign));
        }
    }
    out
}

/// [`lower_map`] extended linearly.
pub fn lower_map_vector(v: &FreeVector<Tableau>) -> FreeVector<Tableau> {
    let mut out = FreeVector::new();
    for (t, c) in v.iter() {
        out.add_scaled(&lower_map(t), c);
    }
    out
}
