//! Nilpotent orbits of the classical algebras, labelled by partitions.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg::{jordan_partition, jordan_partition_int, nullspace, rank, RationalMatrix};
use crate::partition::Partition;
use crate::rational::{frac, rat, Rational};
use crate::realization::ClassicalAlgebra;
use crate::roots::{AlgebraKind, Family, Root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VeryEvenTag {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub partition: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<VeryEvenTag>,
}

impl OrbitLabel {
    pub fn plain(partition: Partition) -> Self {
        OrbitLabel { partition, tag: None }
    }

    pub fn tagged(partition: Partition, tag: VeryEvenTag) -> Self {
        OrbitLabel { partition, tag: Some(tag) }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        for (suffix, tag) in [("ᴵᴵ", VeryEvenTag::II), ("ᴵ", VeryEvenTag::I), ("II", VeryEvenTag::II), ("I", VeryEvenTag::I)] {
            if let Some(body) = s.strip_suffix(suffix) {
                return Ok(OrbitLabel::tagged(Partition::parse(body)?, tag));
            }
        }
        Ok(OrbitLabel::plain(Partition::parse(s)?))
    }
}

/// Larger partitions first, tag I before II.
impl Ord for OrbitLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.partition.cmp(&self.partition).then(self.tag.cmp(&other.tag))
    }
}

impl PartialOrd for OrbitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.tag {
            None => "",
            Some(VeryEvenTag::I) => "ᴵ",
            Some(VeryEvenTag::II) => "ᴵᴵ",
        };
        write!(f, "{}{}", self.partition.label(), suffix)
    }
}

/// Whether `p` labels an orbit in the given family (ignoring the tag).
pub fn admissible(family: Family, p: &Partition) -> bool {
    let mults = p.multiplicities();
    match family {
        Family::A => true,
        Family::B | Family::D => mults.iter().all(|&(part, m)| part % 2 == 1 || m % 2 == 0),
        Family::C => mults.iter().all(|&(part, m)| part % 2 == 0 || m % 2 == 0),
    }
}

/// Labels for partitions of `size` (the matrix size).
pub fn labels_for_size(family: Family, size: usize) -> Vec<OrbitLabel> {
    let mut out = Vec::new();
    for p in Partition::all(size) {
        if !admissible(family, &p) {
            continue;
        }
        if family == Family::D && p.is_very_even() {
            out.push(OrbitLabel::tagged(p.clone(), VeryEvenTag::I));
            out.push(OrbitLabel::tagged(p, VeryEvenTag::II));
        } else {
            out.push(OrbitLabel::plain(p));
        }
    }
    out
}

pub fn orbit_labels(kind: AlgebraKind) -> Vec<OrbitLabel> {
    labels_for_size(kind.family(), kind.matrix_size())
}

fn check_label(kind: AlgebraKind, label: &OrbitLabel) -> Result<()> {
    let p = &label.partition;
    let bad = |why: &str| Err(Error::InadmissibleLabel(format!("{label} for {}: {why}", kind.name())));
    if p.total() != kind.matrix_size() {
        return bad("wrong size");
    }
    if !admissible(kind.family(), p) {
        return bad("multiplicity rule");
    }
    let wants_tag = kind.family() == Family::D && p.is_very_even();
    if wants_tag != label.tag.is_some() {
        return bad(if wants_tag { "very even label needs a tag" } else { "tag on a partition that is not very even" });
    }
    Ok(())
}

/// Dominance order with the two very even orbits of a partition incomparable.
pub fn orbit_leq(a: &OrbitLabel, b: &OrbitLabel) -> bool {
    if a.partition == b.partition {
        return a.tag == b.tag;
    }
    b.partition.dominates(&a.partition)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPoset {
    pub labels: Vec<OrbitLabel>,
    /// (upper, lower) index pairs.
    pub covers: Vec<(usize, usize)>,
}

impl OrbitPoset {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
        }
        for (a, b) in &self.covers {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Labels with nothing above them.
    pub fn maximal(&self) -> Vec<&OrbitLabel> {
        (0..self.labels.len()).filter(|&i| !self.covers.iter().any(|&(_, b)| b == i)).map(|i| &self.labels[i]).collect()
    }

    pub fn minimal(&self) -> Vec<&OrbitLabel> {
        (0..self.labels.len()).filter(|&i| !self.covers.iter().any(|&(a, _)| a == i)).map(|i| &self.labels[i]).collect()
    }
}

pub fn hasse(kind: AlgebraKind) -> OrbitPoset {
    let labels = orbit_labels(kind);
    let n = labels.len();
    let lt = |a: usize, b: usize| a != b && orbit_leq(&labels[a], &labels[b]);
    let mut covers = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if lt(lo, hi) && !(0..n).any(|c| lt(lo, c) && lt(c, hi)) {
                covers.push((hi, lo));
            }
        }
    }
    OrbitPoset { labels, covers }
}

/// Column-wise description of a nilpotent: X·basis[k] = images[k].
struct Recipe {
    size: usize,
    basis: Vec<Vec<Rational>>,
    images: Vec<Vec<Rational>>,
}

impl Recipe {
    fn new(size: usize) -> Self {
        Recipe { size, basis: Vec::new(), images: Vec::new() }
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.size];
        v[i] = Rational::one();
        v
    }

    fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.size]
    }

    fn set(&mut self, v: Vec<Rational>, image: Vec<Rational>) {
        self.basis.push(v);
        self.images.push(image);
    }

    /// X e_{i_1} = 0, X e_{i_{t+1}} = e_{i_t}; X f_{i_t} = −f_{i_{t+1}}.
    /// The last f is left to the caller.
    fn chains(&mut self, e: &[usize], f: &[usize]) {
        for t in 0..e.len() {
            let img = if t == 0 { self.zero() } else { self.unit(e[t - 1]) };
            self.set(self.unit(e[t]), img);
        }
        for t in 0..f.len().saturating_sub(1) {
            let img: Vec<Rational> = self.unit(f[t + 1]).into_iter().map(|x| -x).collect();
            self.set(self.unit(f[t]), img);
        }
    }

    fn finish(self) -> Result<RationalMatrix> {
        let n = self.size;
        if self.basis.len() != n {
            return Err(Error::Spec(format!("recipe covers {} of {n} basis vectors", self.basis.len())));
        }
        let cols = |vs: &[Vec<Rational>]| {
            let mut m = RationalMatrix::zeros(n, n);
            for (j, v) in vs.iter().enumerate() {
                for (i, x) in v.iter().enumerate() {
                    m[(i, j)] = x.clone();
                }
            }
            m
        };
        let b = cols(&self.basis);
        let inv = b.inverse().ok_or_else(|| Error::Spec("recipe basis is singular".into()))?;
        cols(&self.images).checked_mul(&inv)
    }
}

fn scaled(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

/// A nilpotent element of `alg` with Jordan type `label.partition`.
pub fn representative(label: &OrbitLabel, alg: &ClassicalAlgebra) -> Result<RationalMatrix> {
    let kind = alg.kind();
    check_label(kind, label)?;
    let parts = label.partition.parts();
    let x = match kind.family() {
        Family::A => {
            let mut m = RationalMatrix::zeros(0, 0);
            for &k in parts {
                m = m.direct_sum(&crate::linalg::jordan_block(k));
            }
            m
        }
        family => classical_representative(family, kind.rank(), parts)?,
    };
    if !alg.is_member(&x) {
        return Err(Error::NotInAlgebra(kind.name()));
    }
    let x = match label.tag {
        Some(tag) if very_even_tag(&x, kind.rank())? != tag => swap_last_pair(&x, kind.rank()),
        _ => x,
    };
    debug_assert_eq!(jordan_partition(&x).ok().as_ref(), Some(&label.partition));
    Ok(x)
}

fn classical_representative(family: Family, n: usize, parts: &[usize]) -> Result<RationalMatrix> {
    let o = usize::from(family == Family::B);
    let size = 2 * n + o;
    let e = |i: usize| o + i;
    let f = |i: usize| o + n + i;
    let mut r = Recipe::new(size);
    let mut next = 0usize;
    let mut take = |k: usize| {
        let v: Vec<usize> = (next..next + k).collect();
        next += k;
        v
    };

    let mut odd: Vec<usize> = Vec::new();
    for (part, m) in Partition::new(parts.to_vec())?.multiplicities() {
        if family == Family::C && part % 2 == 0 {
            // Single block 2q: x_{L_j−L_{j+1}} chain ending in x_{2L_{j+q}}.
            for _ in 0..m {
                let idx = take(part / 2);
                let es: Vec<usize> = idx.iter().map(|&i| e(i)).collect();
                let fs: Vec<usize> = idx.iter().map(|&i| f(i)).collect();
                r.chains(&es, &fs);
                r.set(r.unit(*fs.last().unwrap()), r.unit(*es.last().unwrap()));
            }
        } else if family != Family::C && part % 2 == 1 {
            odd.extend(std::iter::repeat(part).take(m));
        } else {
            // Pairs (k, k) on k indices.
            for _ in 0..m / 2 {
                let idx = take(part);
                let es: Vec<usize> = idx.iter().map(|&i| e(i)).collect();
                let fs: Vec<usize> = idx.iter().map(|&i| f(i)).collect();
                r.chains(&es, &fs);
                r.set(r.unit(*fs.last().unwrap()), r.zero());
            }
        }
    }

    // Orthogonal odd blocks: principal nilpotents of so(2a+1) around an
    // anisotropic vector w with B(w, w) = c.
    let odd_block = |r: &mut Recipe, a: usize, idx: Vec<usize>, w: Vec<Rational>, c: Rational| {
        let es: Vec<usize> = idx.iter().map(|&i| e(i)).collect();
        let fs: Vec<usize> = idx.iter().map(|&i| f(i)).collect();
        r.chains(&es, &fs);
        if a == 0 {
            r.set(w, r.zero());
        } else {
            r.set(w.clone(), r.unit(*es.last().unwrap()));
            r.set(r.unit(*fs.last().unwrap()), scaled(&w, &-c.recip()));
        }
    };
    if family == Family::B {
        let last = odd.pop().ok_or_else(|| Error::InadmissibleLabel("type B needs an odd part".into()))?;
        let a = (last - 1) / 2;
        let idx = take(a);
        let w = r.unit(0);
        odd_block(&mut r, a, idx, w, rat(1));
    }
    for pair in odd.chunks(2) {
        let [p, q] = pair else {
            return Err(Error::InadmissibleLabel("odd parts do not pair up".into()));
        };
        let (a, b) = ((p - 1) / 2, (q - 1) / 2);
        let ia = take(a);
        let ib = take(b);
        let mid = take(1)[0];
        // u = e_mid + f_mid/2, v = e_mid − f_mid/2; B(u,u) = 1, B(v,v) = −1.
        let half = frac(1, 2);
        let mut u = r.unit(e(mid));
        u[f(mid)] = half.clone();
        let mut v = r.unit(e(mid));
        v[f(mid)] = -half;
        odd_block(&mut r, a, ia, u, rat(1));
        odd_block(&mut r, b, ib, v, rat(-1));
    }
    r.finish()
}

/// Conjugation by the reflection swapping e_n and f_n (an element of
/// O(2n) outside SO(2n)).
fn swap_last_pair(x: &RationalMatrix, n: usize) -> RationalMatrix {
    let mut perm: Vec<usize> = (0..2 * n).collect();
    perm.swap(n - 1, 2 * n - 1);
    x.permuted(&perm)
}

/// I/II for a very even nilpotent of so(2n): the parity of
/// dim(L ∩ span(e_1..e_n)) against n, where L = Σ_k X^k(ker X^{2k}) is the
/// canonical X-stable Lagrangian.
pub fn very_even_tag(x: &RationalMatrix, n: usize) -> Result<VeryEvenTag> {
    let size = 2 * n;
    if x.rows() != size || !x.is_square() {
        return Err(Error::DimensionMismatch { expected: size, found: x.rows() });
    }
    let mut spanning: Vec<Vec<Rational>> = Vec::new();
    let mut xk = x.clone();
    let mut k = 1;
    while !xk.is_zero() {
        let x2k = xk.checked_mul(&xk)?;
        for v in nullspace(&x2k) {
            let w = xk.checked_mul(&v)?;
            spanning.push(w.into_entries());
        }
        xk = xk.checked_mul(x)?;
        k += 1;
        if k > size {
            return Err(Error::NotNilpotent);
        }
    }
    let to_matrix = |vs: &[Vec<Rational>]| {
        let mut m = RationalMatrix::zeros(vs.len().max(1), size);
        for (i, v) in vs.iter().enumerate() {
            for (j, c) in v.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        m
    };
    let dim_l = rank(&to_matrix(&spanning));
    if dim_l != n {
        return Err(Error::AssumptionViolated(format!("canonical subspace has dimension {dim_l}, expected {n}")));
    }
    let mut both = spanning.clone();
    for i in 0..n {
        let mut v = vec![Rational::zero(); size];
        v[i] = Rational::one();
        both.push(v);
    }
    let meet = dim_l + n - rank(&to_matrix(&both));
    Ok(if meet % 2 == n % 2 { VeryEvenTag::I } else { VeryEvenTag::II })
}

/// Label of a nilpotent matrix of the given algebra.
pub fn label_of(x: &RationalMatrix, kind: AlgebraKind) -> Result<OrbitLabel> {
    let p = jordan_partition(x)?;
    Ok(tag_partition(p, kind, || very_even_tag(x, kind.rank()))?)
}

fn tag_partition(p: Partition, kind: AlgebraKind, tag: impl FnOnce() -> Result<VeryEvenTag>) -> Result<OrbitLabel> {
    if kind.family() == Family::D && p.is_very_even() {
        Ok(OrbitLabel::tagged(p, tag()?))
    } else {
        Ok(OrbitLabel::plain(p))
    }
}

/// Image of a source orbit under a canonical embedding of the same family.
pub fn embedded_orbit(label: &OrbitLabel, e: &Embedding) -> Result<OrbitLabel> {
    let (sk, tk) = (e.source().kind(), e.target().kind());
    if !e.is_canonical() || sk.family() != tk.family() {
        return Err(Error::FamilyMismatch(sk.family(), tk.family()));
    }
    let x = representative(label, e.source())?;
    label_of(&e.image(&x)?, tk)
}

fn padded(family: Family, size: usize, pad: usize, keep: impl Fn(&Partition) -> bool) -> Vec<OrbitLabel> {
    Partition::all(size)
        .into_iter()
        .filter(|p| admissible(family, p) && keep(p))
        .map(|p| OrbitLabel::plain(p.pad_ones(pad)))
        .collect()
}

/// The closed-form reachable set for the canonical (family, n, m) embedding,
/// n and m being Dynkin ranks.
pub fn reachable_orbits_predicted(family: Family, n: usize, m: usize) -> Result<Vec<OrbitLabel>> {
    if n >= m {
        return Err(Error::RankOrder { src: n, tgt: m });
    }
    AlgebraKind::new(family, m)?;
    let d = m - n;
    let mut out: BTreeSet<OrbitLabel> = BTreeSet::new();
    match family {
        Family::A => out.extend(padded(family, d + 1, n, |_| true)),
        Family::B => out.extend(padded(family, 2 * d + 1, 2 * n, |p| p.parts().contains(&1))),
        Family::C => {
            out.extend(padded(family, 2 * d, 2 * n, |_| true));
            if d % 2 == 0 {
                let mut parts = vec![d + 1, d + 1];
                parts.extend(std::iter::repeat(1).take(2 * (n - 1)));
                out.insert(OrbitLabel::plain(Partition::new(parts)?));
            }
        }
        Family::D => {
            out.extend(padded(family, 2 * d, 2 * n, |_| true));
            if n == 1 && m % 2 == 0 {
                out.extend(fork_very_even(m)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// For sl₂ at the fork of so_{2m}: one label per very even partition, the
/// tag read off Σ y_γ over the pair-chunk roots with L_{m−1}−L_m replaced
/// by L_{m−1}+L_m.
fn fork_very_even(m: usize) -> Result<Vec<OrbitLabel>> {
    let kind = AlgebraKind::new(Family::D, m)?;
    let alg = ClassicalAlgebra::realize(kind);
    let mut out = Vec::new();
    for p in Partition::all(2 * m).into_iter().filter(Partition::is_very_even) {
        let mut x = RationalMatrix::zeros(2 * m, 2 * m);
        let mut start = 0;
        for (part, mult) in p.multiplicities() {
            for _ in 0..mult / 2 {
                for i in start..start + part - 1 {
                    let mut c = vec![0i64; m];
                    c[i] = 1;
                    c[i + 1] = if i + 1 == m - 1 { 1 } else { -1 };
                    let t = alg.triple(&Root::new(c)).expect("recipe root");
                    x = x.checked_add(&t.y)?;
                }
                start += part;
            }
        }
        let label = label_of(&x, kind)?;
        if label.partition != p {
            return Err(Error::AssumptionViolated(format!("fork recipe for {} gave {}", p.label(), label.partition.label())));
        }
        out.push(label);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct EmpiricalConfig {
    pub coeffs: Vec<Rational>,
    /// Enumerate every vector when |coeffs|^c is at most this.
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for EmpiricalConfig {
    fn default() -> Self {
        EmpiricalConfig { coeffs: vec![rat(-1), rat(0), rat(1)], exhaustive_limit: 1_000_000, samples: 100_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalResult {
    pub labels: Vec<OrbitLabel>,
    pub element_count: usize,
    pub exhaustive: bool,
    pub evaluated: u64,
}

/// Jordan types of linear combinations of the embedding-element matrices y_γ.
pub fn reachable_orbits_empirical(e: &Embedding, cfg: &EmpiricalConfig) -> Result<EmpiricalResult> {
    let tgt = e.target();
    let kind = tgt.kind();
    let size = tgt.matrix_size();
    let gammas = e.embedding_elements()?;
    let c = gammas.len();
    if cfg.coeffs.is_empty() {
        return Err(Error::Spec("empty coefficient set".into()));
    }

    // Scaling every coefficient by a common positive factor keeps the Jordan
    // type, so work with integers throughout.
    let denom = cfg.coeffs.iter().fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let coeffs: Vec<i128> = cfg
        .coeffs
        .iter()
        .map(|q| (q * Rational::from_integer(denom.clone())).to_integer().to_i128())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Spec("coefficients too large".into()))?;
    let mats: Vec<Vec<i128>> = gammas
        .iter()
        .map(|g| {
            let y = &tgt.triple(g).expect("embedding element is a positive root").y;
            y.entries().iter().map(|v| if v.is_integer() { v.to_integer().to_i128() } else { None }).collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Spec("non-integral root vector".into()))?;

    let eval = |vec: &[i128]| -> Result<OrbitLabel> {
        let mut x = vec![0i128; size * size];
        for (coef, m) in vec.iter().zip(&mats) {
            if *coef == 0 {
                continue;
            }
            for (slot, v) in x.iter_mut().zip(m) {
                *slot += coef * v;
            }
        }
        let p = jordan_partition_int(size, &x)?;
        tag_partition(p, kind, || {
            let data = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
            very_even_tag(&RationalMatrix::from_vec(size, size, data)?, kind.rank())
        })
    };

    let s = coeffs.len() as u64;
    let total = (s as f64).powi(c as i32);
    let exhaustive = total <= cfg.exhaustive_limit as f64;
    let found: BTreeSet<OrbitLabel>;
    let evaluated: u64;
    if exhaustive {
        let count = s.pow(c as u32);
        found = (0..count)
            .into_par_iter()
            .fold(
                || Ok(BTreeSet::new()),
                |acc: Result<BTreeSet<OrbitLabel>>, mut idx| {
                    let mut acc = acc?;
                    let mut v = vec![0i128; c];
                    for slot in v.iter_mut() {
                        *slot = coeffs[(idx % s) as usize];
                        idx /= s;
                    }
                    acc.insert(eval(&v)?);
                    Ok(acc)
                },
            )
            .try_reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?;
        evaluated = count;
    } else {
        let indicators = indicator_vectors(c);
        let block = 1000usize;
        let blocks = cfg.samples.div_ceil(block);
        let sampled: BTreeSet<OrbitLabel> = (0..blocks)
            .into_par_iter()
            .map(|b| -> Result<BTreeSet<OrbitLabel>> {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(b as u64);
                let mut acc = BTreeSet::new();
                let n = block.min(cfg.samples - b * block);
                for _ in 0..n {
                    let v: Vec<i128> = (0..c).map(|_| coeffs[rng.gen_range(0..coeffs.len())]).collect();
                    acc.insert(eval(&v)?);
                }
                Ok(acc)
            })
            .try_reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?;
        let from_indicators: BTreeSet<OrbitLabel> = indicators
            .par_iter()
            .map(|v| eval(v).map(|l| BTreeSet::from([l])))
            .try_reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?;
        found = sampled.union(&from_indicators).cloned().collect();
        evaluated = cfg.samples as u64 + indicators.len() as u64;
    }
    Ok(EmpiricalResult { labels: found.into_iter().collect(), element_count: c, exhaustive, evaluated })
}

/// All 0/1 vectors when there are at most 10⁶ of them, otherwise the unit
/// vectors and the all-ones vector.
fn indicator_vectors(c: usize) -> Vec<Vec<i128>> {
    if c <= 20 {
        (0u64..1 << c).map(|mask| (0..c).map(|i| i128::from((mask >> i) & 1 == 1)).collect()).collect()
    } else {
        let mut out: Vec<Vec<i128>> = (0..c)
            .map(|i| {
                let mut v = vec![0; c];
                v[i] = 1;
                v
            })
            .collect();
        out.push(vec![1; c]);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReachabilityReport {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub predicted: Vec<OrbitLabel>,
    pub empirical: EmpiricalResult,
    /// Predicted but not observed.
    pub missing: Vec<OrbitLabel>,
    /// Observed but not predicted.
    pub unexpected: Vec<OrbitLabel>,
}

impl ReachabilityReport {
    pub fn sound(&self) -> bool {
        self.unexpected.is_empty()
    }

    pub fn equal(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }
}

pub fn reachability(family: Family, n: usize, m: usize, cfg: &EmpiricalConfig) -> Result<ReachabilityReport> {
    let predicted = reachable_orbits_predicted(family, n, m)?;
    let e = Embedding::canonical_ranks(family, n, m)?;
    let empirical = reachable_orbits_empirical(&e, cfg)?;
    let p: BTreeSet<&OrbitLabel> = predicted.iter().collect();
    let q: BTreeSet<&OrbitLabel> = empirical.labels.iter().collect();
    let missing = p.difference(&q).map(|l| (*l).clone()).collect();
    let unexpected = q.difference(&p).map(|l| (*l).clone()).collect();
    Ok(ReachabilityReport { family, n, m, predicted, empirical, missing, unexpected })
}

/// Parses "-1,0,1/2".
pub fn parse_coeffs(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| crate::rational::parse_rational(t.trim()).ok_or_else(|| Error::Spec(format!("bad coefficient {t:?}"))))
        .collect()
}
