//! Classical root systems in L-coordinates.
//!
//! Positive systems: A {L_i − L_j}, B {L_i ± L_j, L_k}, C {L_i ± L_j, 2L_k},
//! D {L_i ± L_j}, with i < j. Simple roots are L_i − L_{i+1} followed by the
//! end node (B: L_n, C: 2L_n, D: L_{n−1} + L_n).

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, RationalMatrix};
use crate::rational::{is_nonnegative_integer, is_positive_integer, rat, Rational, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::Spec(format!("unknown family {other:?}"))),
        }
    }
}

/// A family together with its Dynkin rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KindRepr", into = "KindRepr")]
pub struct AlgebraKind {
    family: Family,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct KindRepr {
    family: Family,
    rank: usize,
}

impl TryFrom<KindRepr> for AlgebraKind {
    type Error = Error;
    fn try_from(r: KindRepr) -> Result<Self> {
        AlgebraKind::new(r.family, r.rank)
    }
}

impl From<AlgebraKind> for KindRepr {
    fn from(k: AlgebraKind) -> KindRepr {
        KindRepr { family: k.family, rank: k.rank }
    }
}

impl AlgebraKind {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::InvalidRank { family, rank });
        }
        Ok(AlgebraKind { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }

    /// Matrix-algebra name such as `sl4` or `so9`.
    pub fn name(&self) -> String {
        let prefix = match self.family {
            Family::A => "sl",
            Family::C => "sp",
            Family::B | Family::D => "so",
        };
        format!("{prefix}{}", self.matrix_size())
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}{} ({})", self.family, self.rank, self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&c| rat(c)).collect())
    }

    pub fn norm2(&self) -> i64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Readable form such as `L1-L3`, `2L2` or `-L1-L2`.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                s.push_str(&format!("{sign}L{}", i + 1));
            } else {
                s.push_str(&format!("{sign}{mag}L{}", i + 1));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Q> = self.0.iter().map(|&c| Q(rat(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Q> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|q| crate::rational::as_integer(&q.0).ok_or_else(|| serde::de::Error::custom("root coordinates must be integers")))
            .collect::<std::result::Result<Vec<i64>, _>>()
            .map(Root)
    }
}

/// Rational vector in L-coordinates. Type-A weights are stored with last
/// coordinate 0 once they pass through a [`RootSystem`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|v| v * c).collect())
    }

    /// Space-separated rationals, e.g. `(1/2 -1/2 0)`.
    pub fn describe(&self) -> String {
        let v: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        format!("({})", v.join(" "))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::rational::to_q(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Weight(crate::rational::from_q(Vec::deserialize(d)?)))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: AlgebraKind,
    positive: Vec<Root>,
    simple: Vec<Root>,
    /// Coefficients of each positive root in the simple roots.
    simple_coeffs: Vec<Vec<i64>>,
    rho: Weight,
}

fn e(dim: usize, terms: &[(usize, i64)]) -> Root {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    Root(v)
}

impl RootSystem {
    pub fn build(kind: AlgebraKind) -> Self {
        let d = kind.ambient_dim();
        let n = kind.rank;
        let mut positive = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                positive.push(e(d, &[(i, 1), (j, -1)]));
                if kind.family != Family::A {
                    positive.push(e(d, &[(i, 1), (j, 1)]));
                }
            }
        }
        match kind.family {
            Family::B => positive.extend((0..d).map(|k| e(d, &[(k, 1)]))),
            Family::C => positive.extend((0..d).map(|k| e(d, &[(k, 2)]))),
            _ => {}
        }

        let chain_len = if kind.family == Family::A { n } else { n - 1 };
        let mut simple: Vec<Root> = (0..chain_len).map(|i| e(d, &[(i, 1), (i + 1, -1)])).collect();
        match kind.family {
            Family::A => {}
            Family::B => simple.push(e(d, &[(n - 1, 1)])),
            Family::C => simple.push(e(d, &[(n - 1, 2)])),
            Family::D => simple.push(e(d, &[(n - 2, 1), (n - 1, 1)])),
        }

        let basis = RationalMatrix::from_rows(
            (0..d).map(|row| simple.iter().map(|s| rat(s.0[row])).collect()).collect(),
        )
        .expect("simple root matrix");
        let mut tagged: Vec<(Vec<i64>, Root)> = positive
            .into_iter()
            .map(|r| {
                let target: Vec<Rational> = r.0.iter().map(|&c| rat(c)).collect();
                let c = solve_linear(&basis, &target).expect("positive root outside the simple span");
                let c: Vec<i64> = c
                    .iter()
                    .map(|v| crate::rational::as_integer(v).expect("non-integral simple coefficient"))
                    .collect();
                assert!(c.iter().all(|&v| v >= 0), "positive root with a negative simple coefficient");
                (c, r)
            })
            .collect();
        // Height first, then coordinates in decreasing lexicographic order.
        tagged.sort_by(|(ca, ra), (cb, rb)| {
            let ha: i64 = ca.iter().sum();
            let hb: i64 = cb.iter().sum();
            ha.cmp(&hb).then_with(|| rb.0.cmp(&ra.0))
        });
        let (simple_coeffs, positive): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
        assert_eq!(positive.len(), kind.positive_root_count());

        let mut rho = Weight::zero(d);
        for r in &positive {
            rho = &rho + &r.to_weight();
        }
        let rho = rho.scale(&Rational::new(1.into(), 2.into()));
        let mut sys = RootSystem { kind, positive, simple, simple_coeffs, rho };
        sys.rho = sys.canonical(&sys.rho);
        sys
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn dim(&self) -> usize {
        self.kind.ambient_dim()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| -r));
        v
    }

    pub fn simple_coefficients(&self, idx: usize) -> &[i64] {
        &self.simple_coeffs[idx]
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.simple_coeffs[idx].iter().sum()
    }

    pub fn max_height(&self) -> i64 {
        (0..self.positive.len()).map(|i| self.height(i)).max().unwrap_or(0)
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.positive.iter().position(|p| p == r)
    }

    /// Index in the positive list of the i-th simple root.
    pub fn simple_index(&self, i: usize) -> usize {
        self.positive_index(&self.simple[i]).expect("simple root is positive")
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        coords.len() == self.dim()
            && self.positive.iter().any(|p| p.0 == coords || p.0.iter().zip(coords).all(|(a, b)| *a == -*b))
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Type A: shifts by a multiple of the all-ones vector so the last
    /// coordinate is 0. Other types: unchanged.
    pub fn canonical(&self, w: &Weight) -> Weight {
        if self.kind.family != Family::A || w.0.is_empty() {
            return w.clone();
        }
        let last = w.0.last().unwrap().clone();
        Weight(w.0.iter().map(|c| c - &last).collect())
    }

    pub fn weight(&self, coords: Vec<Rational>) -> Result<Weight> {
        self.check_dim(coords.len())?;
        Ok(self.canonical(&Weight(coords)))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    /// ⟨λ, α∨⟩ = 2⟨λ,α⟩/⟨α,α⟩.
    pub fn pairing(&self, lambda: &Weight, alpha: &Root) -> Result<Rational> {
        self.check_dim(lambda.dim())?;
        self.check_dim(alpha.dim())?;
        let num: Rational = lambda.0.iter().zip(&alpha.0).map(|(l, &a)| l * rat(a)).sum();
        Ok(num * rat(2) / rat(alpha.norm2()))
    }

    /// s_α(β) = β − ⟨β,α∨⟩α.
    pub fn reflect(&self, alpha: &Root, beta: &Weight) -> Result<Weight> {
        let p = self.pairing(beta, alpha)?;
        Ok(self.canonical(&(beta - &alpha.to_weight().scale(&p))))
    }

    /// s_α·λ = s_α(λ+ρ) − ρ.
    pub fn dot_action(&self, alpha: &Root, lambda: &Weight) -> Result<Weight> {
        let shifted = lambda + &self.rho;
        Ok(self.canonical(&(&self.reflect(alpha, &shifted)? - &self.rho)))
    }

    /// ⟨λ+ρ, α∨⟩ is never a positive integer for α ∈ Φ⁺.
    pub fn is_antidominant(&self, lambda: &Weight) -> Result<bool> {
        let shifted = lambda + &self.rho;
        for a in &self.positive {
            if is_positive_integer(&self.pairing(&shifted, a)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_dominant_integral(&self, lambda: &Weight) -> Result<bool> {
        for a in &self.simple {
            if !is_nonnegative_integer(&self.pairing(lambda, a)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficients of `w` in the simple roots, if `w` lies in their span.
    /// Type-A weights are first moved to the sum-zero representative.
    pub fn simple_coordinates(&self, w: &Weight) -> Result<Option<Vec<Rational>>> {
        self.check_dim(w.dim())?;
        let mut v = w.0.clone();
        if self.kind.family == Family::A {
            let mean: Rational = v.iter().cloned().sum::<Rational>() / rat(v.len() as i64);
            v.iter_mut().for_each(|c| *c -= &mean);
        }
        let d = self.dim();
        let basis = RationalMatrix::from_rows(
            (0..d).map(|row| self.simple.iter().map(|s| rat(s.0[row])).collect()).collect(),
        )?;
        Ok(solve_linear(&basis, &v))
    }

    /// λ − μ is a non-negative integer combination of simple roots.
    pub fn weight_leq(&self, mu: &Weight, lambda: &Weight) -> Result<bool> {
        let diff = lambda - mu;
        Ok(match self.simple_coordinates(&diff)? {
            Some(c) => c.iter().all(is_nonnegative_integer),
            None => false,
        })
    }

    /// ⟨λ, α_i∨⟩ for the simple roots, in order.
    pub fn coroot_values(&self, lambda: &Weight) -> Result<Vec<Rational>> {
        self.simple.iter().map(|a| self.pairing(lambda, a)).collect()
    }

    /// The weight with prescribed values on the simple coroots.
    pub fn weight_from_coroot_values(&self, values: &[Rational]) -> Result<Weight> {
        if values.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: values.len() });
        }
        let d = self.dim();
        let mut rows: Vec<Vec<Rational>> = self
            .simple
            .iter()
            .map(|a| a.0.iter().map(|&c| rat(2 * c) / rat(a.norm2())).collect())
            .collect();
        let mut rhs = values.to_vec();
        if self.kind.family == Family::A {
            let mut last = vec![Rational::zero(); d];
            last[d - 1] = Rational::one();
            rows.push(last);
            rhs.push(Rational::zero());
        }
        let m = RationalMatrix::from_rows(rows)?;
        let sol = solve_linear(&m, &rhs).expect("coroot system is always solvable");
        Ok(Weight(sol))
    }
}

/// Given linearly independent vectors, builds γ with ⟨γ, v⟩ > 0 for each of
/// them: extend a witness for the first k−1 vectors by a multiple of the part
/// of v_k orthogonal to their span. Returns `None` on dependent input.
pub fn positive_functional(vectors: &[Weight]) -> Option<Weight> {
    let dim = vectors.first()?.dim();
    let mut gamma = Weight::zero(dim);
    let mut ortho: Vec<Weight> = Vec::new();
    for v in vectors {
        let mut beta = v.clone();
        for u in &ortho {
            let c = beta.dot(u) / u.dot(u);
            beta = &beta - &u.scale(&c);
        }
        if beta.is_zero() {
            return None;
        }
        let g = gamma.dot(v);
        if !g.is_positive() {
            let b2 = beta.dot(&beta);
            let d = &b2 / (rat(2) * (g.abs() + rat(1)));
            gamma = &gamma.scale(&d) + &beta;
        }
        ortho.push(beta);
    }
    Some(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::build(AlgebraKind::new(f, n).unwrap())
    }

    #[test]
    fn counts_and_simple_roots() {
        assert_eq!(sys(Family::A, 3).positive_roots().len(), 6);
        let c = sys(Family::C, 3);
        assert!(c.simple_roots().contains(&Root::new(vec![0, 0, 2])));
        let d = sys(Family::D, 4);
        assert!(d.simple_roots().contains(&Root::new(vec![0, 0, 1, -1])));
        assert!(d.simple_roots().contains(&Root::new(vec![0, 0, 1, 1])));
        assert!(AlgebraKind::new(Family::D, 1).is_err());
        assert!(AlgebraKind::new(Family::A, 0).is_err());
    }

    #[test]
    fn order_is_height_then_lex_descending() {
        let a = sys(Family::A, 3);
        let names: Vec<String> = a.positive_roots().iter().map(Root::describe).collect();
        assert_eq!(names, ["L1-L2", "L2-L3", "L3-L4", "L1-L3", "L2-L4", "L1-L4"]);
    }

    #[test]
    fn pairing_examples() {
        let a2 = sys(Family::A, 2);
        let alpha = Root::new(vec![0, 1, -1]);
        assert_eq!(a2.pairing(&alpha.to_weight(), &alpha).unwrap(), rat(2));
        let lam = &alpha.to_weight() + a2.rho();
        assert_eq!(a2.pairing(&lam, &alpha).unwrap(), rat(3));
        assert!(matches!(a2.pairing(&Weight::zero(2), &alpha), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reflections_and_dot_action() {
        let a1 = sys(Family::A, 1);
        let alpha = a1.simple_roots()[0].clone();
        let neg = a1.canonical(&(-&alpha.to_weight()));
        assert_eq!(a1.reflect(&alpha, &alpha.to_weight()).unwrap(), neg);
        // c ↦ −c−2 on λ(h)
        let lam = a1.weight_from_coroot_values(&[frac(5, 3)]).unwrap();
        let mu = a1.dot_action(&alpha, &lam).unwrap();
        assert_eq!(a1.coroot_values(&mu).unwrap(), vec![frac(-5, 3) - rat(2)]);
        let minus_rho = a1.canonical(&(-a1.rho()));
        assert_eq!(a1.dot_action(&alpha, &minus_rho).unwrap(), minus_rho);
    }

    #[test]
    fn antidominance_examples() {
        let a2 = sys(Family::A, 2);
        let minus_rho = a2.canonical(&(-a2.rho()));
        assert!(a2.is_antidominant(&minus_rho).unwrap());
        let l = a2.weight(vec![rat(0), rat(1), rat(-1)]).unwrap();
        assert!(!a2.is_antidominant(&l).unwrap());
        let a1 = sys(Family::A, 1);
        let half = a1.weight(vec![frac(-1, 2), frac(1, 2)]).unwrap();
        assert!(a1.is_antidominant(&half).unwrap());
    }

    #[test]
    fn dominance_examples() {
        let a2 = sys(Family::A, 2);
        assert!(a2.is_dominant_integral(&Weight::zero(3)).unwrap());
        assert!(a2.is_dominant_integral(a2.rho()).unwrap());
        let l = a2.weight(vec![rat(0), rat(3), rat(-3)]).unwrap();
        assert!(!a2.is_dominant_integral(&l).unwrap());
        assert_eq!(a2.pairing(&l, &Root::new(vec![1, -1, 0])).unwrap(), rat(-3));
    }

    #[test]
    fn weight_leq_examples() {
        let b2 = sys(Family::B, 2);
        let lam = Weight::new(vec![frac(1, 2), rat(3)]);
        let s = b2.simple_roots()[1].to_weight();
        assert!(b2.weight_leq(&lam, &lam).unwrap());
        assert!(b2.weight_leq(&(&lam - &s), &lam).unwrap());
        assert!(!b2.weight_leq(&(&lam + &s), &lam).unwrap());
    }

    #[test]
    fn coroot_value_roundtrip() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let s = sys(f, n);
            let vals: Vec<Rational> = (0..n).map(|i| frac(i as i64 * 3 - 2, 2)).collect();
            let w = s.weight_from_coroot_values(&vals).unwrap();
            assert_eq!(s.coroot_values(&w).unwrap(), vals);
        }
    }

    #[test]
    fn positive_functional_examples() {
        let v = vec![Weight::from_i64(&[1, -1, 0]), Weight::from_i64(&[-1, 0, 1])];
        let g = positive_functional(&v).unwrap();
        assert!(v.iter().all(|x| g.dot(x).is_positive()));
        let dep = vec![Weight::from_i64(&[1, 0]), Weight::from_i64(&[2, 0])];
        assert!(positive_functional(&dep).is_none());
    }
}
