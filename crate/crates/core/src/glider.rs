//! Verma gliders over a chain g₁ ⊂ … ⊂ g_n.
//!
//! Levels are 1-based in reports and JSON (λ₁ lives on g₁, z_i lies in
//! U(g_{i+1})) and 0-based in code.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{as_integer, from_q, is_positive_integer, rat, Rational, Q};
use crate::realization::{ClassicalAlgebra, Generator};
use crate::roots::{AlgebraKind, Family, Root, RootSystem, Weight};
use crate::uea::{PbwMonomial, Subalgebra, Uea, UeaElement, VermaVector};

pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// Consecutive canonical inclusions.
#[derive(Clone, Debug)]
pub struct Chain {
    family: Family,
    ranks: Vec<usize>,
    embeddings: Vec<Embedding>,
}

impl Chain {
    pub fn canonical(family: Family, ranks: &[usize]) -> Result<Self> {
        if ranks.len() < 2 {
            return Err(Error::Spec("a chain needs at least two algebras".into()));
        }
        let embeddings = ranks
            .windows(2)
            .map(|w| Embedding::canonical_ranks(family, w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        for e in &embeddings {
            e.star_map()?;
        }
        Ok(Chain { family, ranks: ranks.to_vec(), embeddings })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.embeddings.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn algebra(&self, level: usize) -> Arc<ClassicalAlgebra> {
        if level == 0 {
            self.embeddings[0].source_arc()
        } else {
            self.embeddings[level - 1].target_arc()
        }
    }

    pub fn top(&self) -> Arc<ClassicalAlgebra> {
        self.algebra(self.len() - 1)
    }

    /// Carries an element of g_level up to the top algebra.
    pub fn push_to_top(&self, level: usize, m: &RationalMatrix) -> Result<RationalMatrix> {
        let mut cur = m.clone();
        for e in &self.embeddings[level..] {
            cur = e.image(&cur)?;
        }
        Ok(cur)
    }

    /// Restriction from the top Cartan dual down to level `level`.
    pub fn restrict_from_top(&self, level: usize, w: &Weight) -> Weight {
        let mut cur = w.clone();
        for e in self.embeddings[level..].iter().rev() {
            cur = e.restrict(&cur);
        }
        cur
    }

    /// g_level inside the top algebra, by the roots its root vectors land on.
    pub fn subalgebra_in_top(&self, level: usize) -> Result<Subalgebra> {
        let top = self.top();
        let alg = self.algebra(level);
        let mut roots = Vec::new();
        for t in alg.triples() {
            let img = self.push_to_top(level, &t.x)?;
            let r = top.root_of(&img).ok_or_else(|| Error::AssumptionViolated("image is not a root vector".into()))?;
            roots.push(r);
        }
        Subalgebra::from_roots(&top, &roots)
    }

    pub fn simple_x_in_top(&self, level: usize, top: &Uea) -> Result<Vec<UeaElement>> {
        let alg = self.algebra(level);
        (0..alg.system().rank())
            .map(|i| {
                let x = &alg.triples()[alg.system().simple_index(i)].x;
                top.from_matrix(&self.push_to_top(level, x)?)
            })
            .collect()
    }

    /// An element of U(g_level) rewritten inside U(top).
    pub fn lift(&self, level: usize, z: &UeaElement, from: &Uea, top: &Uea) -> Result<UeaElement> {
        let alg = from.algebra();
        let images: Vec<UeaElement> = (0..alg.generator_count())
            .map(|g| top.from_matrix(&self.push_to_top(level, alg.generator_matrix(alg.generator_at(g)))?))
            .collect::<Result<_>>()?;
        let mut out = top.zero();
        for (m, c) in z.terms() {
            let mut term = top.one();
            for (g, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = top.multiply(&term, &images[g])?;
                }
            }
            out = out.add(&term.scale(c))?;
        }
        Ok(out)
    }

    /// The simple root of g_{level+1} that is not the image of a simple root
    /// of g_level, when there is exactly one.
    pub fn additional_simple_root(&self, level: usize) -> Option<Root> {
        let e = &self.embeddings[level];
        let nodes = e.node_map()?;
        let sys = e.target().system();
        let extra: Vec<usize> = (0..sys.rank()).filter(|i| !nodes.contains(i)).collect();
        (extra.len() == 1).then(|| sys.simple_roots()[extra[0]].clone())
    }
}

/// (level acting, vector in the top Verma module) pairs beyond the
/// canonical generator of a layer.
#[derive(Clone, Debug)]
pub struct ExtraGenerator {
    pub layer: usize,
    pub level: usize,
    pub element: UeaElement,
}

pub struct VermaGlider {
    chain: Chain,
    ueas: Vec<Uea>,
    weights: Vec<Weight>,
    monomials: Vec<UeaElement>,
    extras: Vec<ExtraGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightBasis {
    /// Values on the simple coroots.
    Coroot,
    /// L-coordinates.
    #[serde(alias = "L")]
    L,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub basis: WeightBasis,
    pub coords: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub root: Root,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraSpec {
    /// Layer index k of M_k (0 is the top Verma module).
    pub layer: usize,
    /// 1-based index of the algebra acting on this generator.
    pub level: usize,
    /// y-monomial in the top algebra.
    pub monomial: Vec<FactorSpec>,
}

/// JSON glider description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GliderSpec {
    pub family: Family,
    pub ranks: Vec<usize>,
    pub weights: Vec<WeightSpec>,
    pub monomials: Vec<Vec<FactorSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_generators: Vec<ExtraSpec>,
}

impl WeightSpec {
    pub fn resolve(&self, sys: &RootSystem) -> Result<Weight> {
        let c = from_q(self.coords.clone());
        match self.basis {
            WeightBasis::Coroot => sys.weight_from_coroot_values(&c),
            WeightBasis::L => sys.weight(c),
        }
    }
}

impl GliderSpec {
    pub fn build(&self) -> Result<VermaGlider> {
        let chain = Chain::canonical(self.family, &self.ranks)?;
        let n = chain.len();
        if self.weights.len() != n {
            return Err(Error::Spec(format!("expected {n} weights, found {}", self.weights.len())));
        }
        if self.monomials.len() != n - 1 {
            return Err(Error::Spec(format!("expected {} monomials, found {}", n - 1, self.monomials.len())));
        }
        let ueas: Vec<Uea> = (0..n).map(|l| Uea::new(chain.algebra(l))).collect();
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(l, w)| w.resolve(ueas[l].algebra().system()).map_err(|e| Error::Spec(format!("weight {}: {e}", l + 1))))
            .collect::<Result<Vec<_>>>()?;
        let factors = |u: &Uea, f: &[FactorSpec]| -> Result<UeaElement> {
            let list: Vec<(Root, u32)> = f.iter().map(|x| (x.root.clone(), x.exp)).collect();
            u.y_product(&list)
        };
        let monomials = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, f)| factors(&ueas[i + 1], f).map_err(|e| Error::Spec(format!("monomial z{}: {e}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let top = &ueas[n - 1];
        let extras = self
            .extra_generators
            .iter()
            .map(|x| {
                if x.layer == 0 || x.layer >= n || x.level == 0 || x.level > n {
                    return Err(Error::Spec(format!("extra generator layer {} / level {} out of range", x.layer, x.level)));
                }
                Ok(ExtraGenerator { layer: x.layer, level: x.level - 1, element: factors(top, &x.monomial)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VermaGlider { chain, ueas, weights, monomials, extras })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub lambda_given: Weight,
    pub lambda_expected: Weight,
    pub cond1_ok: bool,
    pub cond2_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GliderReport {
    pub levels: Vec<LevelReport>,
    pub cond1_ok: Vec<bool>,
    pub cond2_ok: Vec<bool>,
    pub composition_ok: bool,
    pub containment_ok: bool,
    pub essential_length: usize,
    pub notes: Vec<String>,
}

impl GliderReport {
    pub fn all_ok(&self) -> bool {
        self.cond1_ok.iter().all(|&b| b) && self.cond2_ok.iter().all(|&b| b) && self.composition_ok && self.containment_ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Irreducible,
    NotIrreducible,
    CriterionInapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SubfragmentWitness {
    /// y_{β*}^r z v⁺ is a singular vector of the bottom layer with
    /// r = ⟨λ₁+ρ, β∨⟩, so M₁ has the proper submodule M(s_β·λ₁).
    BottomNotSimple { root: Root, exponent: u32 },
    /// z v⁺ lies in U(g₂)·y_α^{m+1}v⁺ with m = ⟨λ₂, α∨⟩, a proper
    /// submodule of the top.
    BottomInsideSubmodule { root: Root, exponent: u32 },
    /// The singular vector y_α^{m+1}v⁺ of the top (m = ⟨λ₂, α∨⟩) lies in
    /// U(g₂)·z v⁺: M(s_α·λ₂) with zero bottom part is a proper subfragment.
    TopSingularReached { root: Root, exponent: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub statement: String,
    pub never_irreducible_when_omega_generated: bool,
}

impl VermaGlider {
    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn monomials(&self) -> &[UeaElement] {
        &self.monomials
    }

    pub fn uea(&self, level: usize) -> &Uea {
        &self.ueas[level]
    }

    pub fn top_uea(&self) -> &Uea {
        self.ueas.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// λ_i expected from λ_{i+1} and z_i (0-based i).
    pub fn expected_lambda(&self, i: usize) -> Result<Weight> {
        solve_lambda_down(&self.ueas[i + 1], &self.weights[i + 1], &self.monomials[i], &self.chain.embeddings[i])
    }

    /// z_i z_{i+1} ⋯ z_{n−1} inside U(top) (0-based i).
    pub fn composite(&self, i: usize) -> Result<UeaElement> {
        let top = self.top_uea();
        let mut acc = top.one();
        for j in i..self.monomials.len() {
            let lifted = self.chain.lift(j + 1, &self.monomials[j], &self.ueas[j + 1], top)?;
            acc = top.multiply(&acc, &lifted)?;
        }
        Ok(acc)
    }

    /// Generators (vector, acting level) of the layer M_k.
    fn layer_generators(&self, k: usize) -> Result<Vec<(VermaVector, usize)>> {
        let n = self.len();
        let top = self.top_uea();
        let lam = &self.weights[n - 1];
        let w = if k == 0 { top.one() } else { self.composite(n - 1 - k)? };
        let mut out = vec![(top.verma_vector(&w, lam)?, n - 1 - k)];
        for x in self.extras.iter().filter(|x| x.layer == k) {
            out.push((top.verma_vector(&x.element, lam)?, x.level));
        }
        Ok(out)
    }

    pub fn verify(&self, degree_bound: usize) -> Result<GliderReport> {
        let n = self.len();
        let mut notes = Vec::new();
        let mut levels = Vec::new();
        for i in 0..n - 1 {
            let expected = self.expected_lambda(i)?;
            let cond1 = expected == self.weights[i];
            let e = &self.chain.embeddings[i];
            let cond2 = self.ueas[i + 1].annihilates_highest(&self.monomials[i], &self.weights[i + 1], e)?;
            if !cond1 {
                notes.push(format!(
                    "level {}: lambda_{} is {} but the chain forces {}",
                    i + 1,
                    i + 1,
                    self.weights[i],
                    expected
                ));
            }
            if !cond2 {
                notes.push(format!("level {}: n_{} does not kill z_{} v+", i + 1, i + 1, i + 1));
            }
            levels.push(LevelReport {
                level: i + 1,
                lambda_given: self.weights[i].clone(),
                lambda_expected: expected,
                cond1_ok: cond1,
                cond2_ok: cond2,
            });
        }

        let top = self.top_uea();
        let lam_top = &self.weights[n - 1];
        let mut composition_ok = true;
        for i in 0..n - 1 {
            let z = self.composite(i)?;
            let w = top.weight_of(&z)?;
            let down = self.chain.restrict_from_top(i, &(lam_top + &w));
            let xs = self.chain.simple_x_in_top(i, top)?;
            let killed = top.annihilated_by(&z, lam_top, &xs)?;
            if down != self.weights[i] || !killed {
                composition_ok = false;
                notes.push(format!("composite z_{}..z_{}: weight match {}, annihilated {}", i + 1, n - 1, down == self.weights[i], killed));
            }
        }

        for (i, e) in self.chain.embeddings.iter().enumerate() {
            let rep = e.check_condition_one();
            if !rep.holds {
                notes.push(format!("step {}: condition (1) fails ({})", i + 1, crate::embedding::describe_collisions(&rep)));
            }
        }
        let containment_ok = self.check_containments(degree_bound, &mut notes)?;
        let all = levels.iter().all(|l| l.cond1_ok && l.cond2_ok) && composition_ok && containment_ok;
        Ok(GliderReport {
            cond1_ok: levels.iter().map(|l| l.cond1_ok).collect(),
            cond2_ok: levels.iter().map(|l| l.cond2_ok).collect(),
            levels,
            composition_ok,
            containment_ok,
            essential_length: if all { n - 1 } else { 0 },
            notes,
        })
    }

    /// F_j·M_μ ⊆ M_{μ−j}, tested on u·g for every generator g of M_μ and
    /// u ∈ {1} ∪ {x_α, y_α : α ∈ Φ⁺(g_{j+1})}.
    fn check_containments(&self, degree_bound: usize, notes: &mut Vec<String>) -> Result<bool> {
        let n = self.len();
        let top = self.top_uea();
        let subs: Vec<Subalgebra> = (0..n).map(|l| self.chain.subalgebra_in_top(l)).collect::<Result<_>>()?;
        let layers: Vec<Vec<(VermaVector, usize)>> = (0..n).map(|k| self.layer_generators(k)).collect::<Result<_>>()?;
        let unit = PbwMonomial::unit(top.generator_count());
        let p = top.algebra().system().positive_roots().len();
        let r = top.algebra().system().rank();
        let mut ok = true;
        for mu in 1..n {
            for j in 1..=mu {
                let lower: Vec<(VermaVector, &Subalgebra)> =
                    layers[mu - j].iter().map(|(v, l)| (v.clone(), &subs[*l])).collect();
                let mut probes = vec![top.one()];
                for &k in &subs[j].roots {
                    probes.push(top.monomial(unit.bumped(p + r + k, 1)));
                    probes.push(top.monomial(unit.bumped(k, 1)));
                }
                for (g, _) in &layers[mu] {
                    for u in &probes {
                        let v = top.verma_act(u, g)?;
                        if v.element.is_zero() {
                            continue;
                        }
                        if !top.span_contains(&v, &lower, degree_bound)? {
                            ok = false;
                            notes.push(format!(
                                "F_{j} M_{mu} not inside M_{} within degree {degree_bound}: {} v+",
                                mu - j,
                                top.describe(&v.element)
                            ));
                        }
                    }
                }
            }
        }
        Ok(ok)
    }

    pub fn classify(&self) -> Result<Classification> {
        let n = self.len();
        let bottom = self.ueas[0].algebra().system();
        let lam1 = &self.weights[0];
        let anti = bottom.is_antidominant(lam1)?;
        let mut reasons = Vec::new();

        // (a): all z = 1 and the weights restrict.
        if self.monomials.iter().all(|z| is_unit(self.ueas[0].kind(), z)) {
            let restrict = (0..n - 1).all(|i| self.chain.embeddings[i].restrict(&self.weights[i + 1]) == self.weights[i]);
            if restrict {
                reasons.push(format!("all z_i = 1 with restricting weights; lambda_1 antidominant: {anti}"));
                let verdict = if anti { Verdict::Irreducible } else { Verdict::NotIrreducible };
                return Ok(Classification { verdict, reasons });
            }
            reasons.push("all z_i = 1 but the weights do not restrict".into());
        }

        for l in self.verify_levels()? {
            if !l {
                reasons.push("conditions (cond1)/(cond2) fail; classify a verified glider".into());
                return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
            }
        }

        // (b): power of the additional simple root at every unit rank step.
        if self.chain.family() == Family::C {
            reasons.push("family C is outside the power criterion".into());
            return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
        }
        let mut thresholds_ok = true;
        for i in 0..n - 1 {
            if self.chain.ranks()[i + 1] != self.chain.ranks()[i] + 1 {
                reasons.push(format!("rank step {} is not 1", i + 1));
                return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
            }
            let sys = self.ueas[i + 1].algebra().system();
            if !sys.is_dominant_integral(&self.weights[i + 1])? {
                reasons.push(format!("lambda_{} is not dominant integral", i + 2));
                return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
            }
            let Some(alpha) = self.chain.additional_simple_root(i) else {
                reasons.push(format!("step {} has no unique additional simple root", i + 1));
                return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
            };
            let Some(k) = power_of(&self.ueas[i + 1], &self.monomials[i], &alpha) else {
                reasons.push(format!("z_{} is not a power of y[{alpha}]", i + 1));
                return Ok(Classification { verdict: Verdict::CriterionInapplicable, reasons });
            };
            let m = sys.pairing(&self.weights[i + 1], &alpha)?;
            let below = rat(k as i64) < m;
            reasons.push(format!("z_{} = y[{alpha}]^{k}, <lambda_{}, alpha^v> = {m}, k < m: {below}", i + 1, i + 2));
            thresholds_ok &= below;
        }
        reasons.push(format!("lambda_1 antidominant: {anti}"));
        let verdict = if anti && thresholds_ok { Verdict::Irreducible } else { Verdict::NotIrreducible };
        Ok(Classification { verdict, reasons })
    }

    fn verify_levels(&self) -> Result<Vec<bool>> {
        (0..self.len() - 1)
            .map(|i| {
                let c1 = self.expected_lambda(i)? == self.weights[i];
                let c2 = self.ueas[i + 1].annihilates_highest(&self.monomials[i], &self.weights[i + 1], &self.chain.embeddings[i])?;
                Ok(c1 && c2)
            })
            .collect()
    }

    /// Searches a two-step glider for a proper subfragment, independently of
    /// [`VermaGlider::classify`]. Used only to exhibit reducibility.
    pub fn subfragment_witness(&self, degree_bound: usize) -> Result<Option<SubfragmentWitness>> {
        if self.len() != 2 {
            return Err(Error::Spec("the witness search handles chains of length 2".into()));
        }
        let e = &self.chain.embeddings[0];
        let top = self.top_uea();
        let (lam1, lam2) = (&self.weights[0], &self.weights[1]);
        let z = &self.monomials[0];
        let zv = top.verma_vector(z, lam2)?;
        let g1 = Subalgebra::of_embedding(e)?;
        let g2 = Subalgebra::full(top.algebra());
        let xs1 = top.embedded_simple_x(e)?;

        let bottom = e.source().system();
        let star = e.star_map()?;
        let shifted = lam1 + bottom.rho();
        for beta in bottom.simple_roots() {
            let c = bottom.pairing(&shifted, beta)?;
            if !is_positive_integer(&c) {
                continue;
            }
            let r = as_integer(&c).unwrap() as u32;
            let bstar = star.star(beta).unwrap();
            let y = top.y_product(&[(bstar.clone(), r)])?;
            let s = top.verma_vector(&top.multiply(&y, z)?, lam2)?;
            if s.element.is_zero() || !top.annihilated_by(&s.element, lam2, &xs1)? {
                continue;
            }
            let inside = top.graded_membership(&s, &[zv.clone()], &g1, degree_bound.max(r as usize))?;
            let proper = !top.graded_membership(&zv, &[s.clone()], &g1, degree_bound)?;
            if inside && proper {
                return Ok(Some(SubfragmentWitness::BottomNotSimple { root: beta.clone(), exponent: r }));
            }
        }

        let sys = top.algebra().system();
        let mut singular = Vec::new();
        for alpha in sys.simple_roots() {
            let m = sys.pairing(lam2, alpha)?;
            if !crate::rational::is_nonnegative_integer(&m) {
                continue;
            }
            let k = as_integer(&m).unwrap() as u32 + 1;
            let s = top.verma_vector(&top.y_product(&[(alpha.clone(), k)])?, lam2)?;
            let all_x: Vec<UeaElement> =
                (0..sys.rank()).map(|i| top.generator(Generator::X(sys.simple_index(i)))).collect();
            if !top.annihilated_by(&s.element, lam2, &all_x)? {
                continue;
            }
            if top.graded_membership(&zv, &[s], &g2, degree_bound)? {
                return Ok(Some(SubfragmentWitness::BottomInsideSubmodule { root: alpha.clone(), exponent: k }));
            }
            singular.push((alpha.clone(), k));
        }
        for (alpha, k) in singular {
            let s = top.verma_vector(&top.y_product(&[(alpha.clone(), k)])?, lam2)?;
            if top.graded_membership(&s, &[zv.clone()], &g2, degree_bound)? {
                return Ok(Some(SubfragmentWitness::TopSingularReached { root: alpha, exponent: k }));
            }
        }
        Ok(None)
    }

    /// For a two-step glider: is y_α^k v⁺ singular in M(λ₂), and does
    /// U(g₂)·z v⁺ reach it within the bound?
    pub fn singular_reach(&self, alpha: &Root, k: u32, degree_bound: usize) -> Result<(bool, bool)> {
        let top = self.top_uea();
        let lam2 = self.weights.last().unwrap();
        let sys = top.algebra().system();
        let s = top.verma_vector(&top.y_product(&[(alpha.clone(), k)])?, lam2)?;
        let all_x: Vec<UeaElement> = (0..sys.rank()).map(|i| top.generator(Generator::X(sys.simple_index(i)))).collect();
        let singular = !s.element.is_zero() && top.annihilated_by(&s.element, lam2, &all_x)?;
        let zv = top.verma_vector(&self.composite(self.len() - 2)?, lam2)?;
        let reached = top.graded_membership(&s, &[zv], &Subalgebra::full(top.algebra()), degree_bound)?;
        Ok((singular, reached))
    }

    /// Does the bottom generator z v⁺ lie in U(g₂)·y_α^k v⁺?
    pub fn bottom_inside(&self, alpha: &Root, k: u32, degree_bound: usize) -> Result<bool> {
        let top = self.top_uea();
        let lam2 = self.weights.last().unwrap();
        let s = top.verma_vector(&top.y_product(&[(alpha.clone(), k)])?, lam2)?;
        let zv = top.verma_vector(&self.composite(self.len() - 2)?, lam2)?;
        top.graded_membership(&zv, &[s], &Subalgebra::full(top.algebra()), degree_bound)
    }
}

fn is_unit(_kind: AlgebraKind, z: &UeaElement) -> bool {
    let mut t = z.terms();
    match (t.next(), t.next()) {
        (Some((m, c)), None) => m.is_unit() && *c == rat(1),
        _ => false,
    }
}

/// k with z = y_α^k, if z has that form.
fn power_of(u: &Uea, z: &UeaElement, alpha: &Root) -> Option<u32> {
    let idx = u.algebra().system().positive_index(alpha)?;
    let mut t = z.terms();
    let (m, c) = t.next()?;
    if t.next().is_some() || *c != rat(1) {
        return None;
    }
    let e = m.exponents();
    e.iter().enumerate().all(|(g, &v)| g == idx || v == 0).then(|| e[idx])
}

/// λ_down = π(λ_up + weight_of(z)).
pub fn solve_lambda_down(u: &Uea, lambda_up: &Weight, z: &UeaElement, e: &Embedding) -> Result<Weight> {
    let w = u.weight_of(z)?;
    Ok(e.restrict(&(lambda_up + &w)))
}

/// Whether an inclusion M(μ) ⊂ M(λ) is guaranteed: μ = λ, or μ = s_α·λ for
/// a positive root α with μ ≤ λ.
pub fn verma_embedding_exists(mu: &Weight, lambda: &Weight, sys: &RootSystem) -> Result<bool> {
    let (mu, lambda) = (sys.canonical(mu), sys.canonical(lambda));
    if mu == lambda {
        return Ok(true);
    }
    for a in sys.positive_roots() {
        if sys.dot_action(a, &lambda)? == mu && sys.weight_leq(&mu, &lambda)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// λ₂ dominant integral and λ₁ not: the bottom layer sits inside N(λ₂), the
/// sum of the M(s_α·λ₂) over simple α.
pub fn domint_obstruction(lambda1: &Weight, lambda2: &Weight, e: &Embedding) -> Result<Option<ObstructionReport>> {
    let top = e.target().system();
    let bottom = e.source().system();
    if !top.is_dominant_integral(lambda2)? || bottom.is_dominant_integral(lambda1)? {
        return Ok(None);
    }
    Ok(Some(ObstructionReport {
        statement: format!(
            "lambda_2 = {lambda2} is dominant integral and lambda_1 = {lambda1} is not: M(lambda_1) = M_1 lies in N(lambda_2) = sum of M(s_a . lambda_2)"
        ),
        never_irreducible_when_omega_generated: true,
    }))
}

/// JSON form of a classification plus the spec echo.
#[derive(Serialize)]
pub struct ClassifyOutput<'a> {
    pub spec: &'a GliderSpec,
    pub classification: Classification,
}

/// JSON form of a verification plus the spec echo.
#[derive(Serialize)]
pub struct VerifyOutput<'a> {
    pub spec: &'a GliderSpec,
    pub degree_bound: usize,
    pub report: GliderReport,
}

pub fn weight_spec_l(w: &Weight) -> WeightSpec {
    WeightSpec { basis: WeightBasis::L, coords: w.coords().iter().cloned().map(Q).collect() }
}

pub fn weight_spec_coroot(values: &[Rational]) -> WeightSpec {
    WeightSpec { basis: WeightBasis::Coroot, coords: values.iter().cloned().map(Q).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn f(root: &[i64], exp: u32) -> FactorSpec {
        FactorSpec { root: Root::new(root.to_vec()), exp }
    }

    fn sl234(lambda1: i64) -> GliderSpec {
        GliderSpec {
            family: Family::A,
            ranks: vec![1, 2, 3],
            weights: vec![
                weight_spec_coroot(&[rat(lambda1)]),
                weight_spec_coroot(&[rat(2), rat(1)]),
                weight_spec_coroot(&[rat(2), rat(0), rat(0)]),
            ],
            monomials: vec![vec![f(&[0, 1, -1], 1)], vec![f(&[0, 0, 1, -1], 1)]],
            extra_generators: vec![],
        }
    }

    #[test]
    fn sl234_forced_bottom_weight() {
        let g = sl234(3).build().unwrap();
        let rep = g.verify(4).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
        assert_eq!(rep.essential_length, 2);
        let g = sl234(4).build().unwrap();
        assert_eq!(g.verify(2).unwrap().cond1_ok, vec![false, true]);
    }

    #[test]
    fn trivial_chain() {
        let spec = GliderSpec {
            family: Family::A,
            ranks: vec![1, 2],
            weights: vec![weight_spec_coroot(&[frac(-1, 1)]), weight_spec_coroot(&[rat(-1), rat(-1)])],
            monomials: vec![vec![]],
            extra_generators: vec![],
        };
        let g = spec.build().unwrap();
        assert!(g.verify(3).unwrap().all_ok());
        assert_eq!(g.classify().unwrap().verdict, Verdict::Irreducible);
    }

    #[test]
    fn json_roundtrip() {
        let s = sl234(3);
        let text = serde_json::to_string(&s).unwrap();
        let back: GliderSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn verma_embedding_predicate() {
        let sys = RootSystem::build(AlgebraKind::new(Family::A, 3).unwrap());
        let lam = sys.weight_from_coroot_values(&[rat(2), rat(0), rat(0)]).unwrap();
        let a = Root::new(vec![0, 0, 1, -1]);
        let mu = sys.dot_action(&a, &lam).unwrap();
        assert!(verma_embedding_exists(&mu, &lam, &sys).unwrap());
        assert!(verma_embedding_exists(&lam, &lam, &sys).unwrap());
        let up = &lam + &sys.simple_roots()[0].to_weight();
        assert!(!verma_embedding_exists(&up, &lam, &sys).unwrap());
    }
}
