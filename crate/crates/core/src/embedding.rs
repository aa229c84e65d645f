//! Inclusions g₁ ⊂ g₂ given by images of the simple-root triples of g₁.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, solve_linear, RationalMatrix};
use crate::realization::{bracket, ClassicalAlgebra, Generator, Triple};
use crate::roots::{AlgebraKind, Family, Root, Weight};

#[derive(Clone)]
pub struct Embedding {
    source: Arc<ClassicalAlgebra>,
    target: Arc<ClassicalAlgebra>,
    images: Vec<Triple>,
    /// Target simple-root index hit by each source simple root, for the
    /// subdiagram inclusions.
    node_map: Option<Vec<usize>>,
    full_images: OnceLock<Vec<RationalMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    /// Source root, and the same root as a canonical source weight.
    pub alpha: Root,
    pub alpha_weight: Weight,
    pub preimages: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOneReport {
    pub holds: bool,
    pub collisions: Vec<Collision>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarData {
    /// (α, α*) for every source root α, positive roots first.
    pub pairs: Vec<(Root, Root)>,
    /// The starred roots that are positive in the target.
    pub positive_star: Vec<Root>,
}

impl StarData {
    pub fn star(&self, alpha: &Root) -> Option<&Root> {
        self.pairs.iter().find(|(a, _)| a == alpha).map(|(_, b)| b)
    }
}

/// For each source root, the target roots restricting to it. `holds` iff
/// every count is exactly one.
pub fn tally_condition_one(source_roots: &[(Root, Weight)], restricted: &[(Root, Weight)]) -> ConditionOneReport {
    let mut by_weight: BTreeMap<&Weight, Vec<Root>> = BTreeMap::new();
    for (beta, w) in restricted {
        by_weight.entry(w).or_default().push(beta.clone());
    }
    let collisions: Vec<Collision> = source_roots
        .iter()
        .filter_map(|(alpha, w)| {
            let pre = by_weight.get(w).cloned().unwrap_or_default();
            (pre.len() != 1).then(|| Collision { alpha: alpha.clone(), alpha_weight: w.clone(), preimages: pre })
        })
        .collect();
    ConditionOneReport { holds: collisions.is_empty(), collisions }
}

impl Embedding {
    /// Subdiagram inclusion. Type A uses the first n nodes (the top-left
    /// block); B, C and D use the last n nodes, which contain the end with the
    /// double bond or the fork.
    pub fn canonical(src: AlgebraKind, tgt: AlgebraKind) -> Result<Self> {
        if src.family() != tgt.family() {
            return Err(Error::FamilyMismatch(src.family(), tgt.family()));
        }
        if src.rank() >= tgt.rank() {
            return Err(Error::RankOrder { src: src.rank(), tgt: tgt.rank() });
        }
        let shift = if src.family() == Family::A { 0 } else { tgt.rank() - src.rank() };
        let nodes = (0..src.rank()).map(|i| i + shift).collect();
        Ok(Self::from_nodes(src, tgt, nodes))
    }

    /// Canonical inclusion for a family and Dynkin ranks n < m. For type D
    /// with n = 1 the source is sl₂ sitting on the fork node L_{m−1} − L_m.
    pub fn canonical_ranks(family: Family, n: usize, m: usize) -> Result<Self> {
        if n >= m {
            return Err(Error::RankOrder { src: n, tgt: m });
        }
        let tgt = AlgebraKind::new(family, m)?;
        if family == Family::D && n == 1 {
            let src = AlgebraKind::new(Family::A, 1)?;
            return Ok(Self::from_nodes(src, tgt, vec![m - 2]));
        }
        Self::canonical(AlgebraKind::new(family, n)?, tgt)
    }

    fn from_nodes(src: AlgebraKind, tgt: AlgebraKind, nodes: Vec<usize>) -> Self {
        let source = Arc::new(ClassicalAlgebra::realize(src));
        let target = Arc::new(ClassicalAlgebra::realize(tgt));
        let images = nodes
            .iter()
            .map(|&k| target.triples()[target.system().simple_index(k)].clone())
            .collect();
        Embedding { source, target, images, node_map: Some(nodes), full_images: OnceLock::new() }
    }

    /// General inclusion from images of the source simple triples. The
    /// bracket relations are checked on every pair of simple roots.
    pub fn from_images(src: AlgebraKind, tgt: AlgebraKind, images: Vec<Triple>) -> Result<Self> {
        let source = Arc::new(ClassicalAlgebra::realize(src));
        let target = Arc::new(ClassicalAlgebra::realize(tgt));
        if images.len() != src.rank() {
            return Err(Error::DimensionMismatch { expected: src.rank(), found: images.len() });
        }
        for (i, t) in images.iter().enumerate() {
            for (name, m) in [("x", &t.x), ("y", &t.y), ("h", &t.h)] {
                if !target.is_member(m) {
                    return Err(Error::Spec(format!("image {name}_{i} is not in {}", tgt.name())));
                }
            }
        }
        let e = Embedding { source, target, images, node_map: None, full_images: OnceLock::new() };
        let broken = e.check_homomorphism();
        if !broken.is_empty() {
            return Err(Error::Spec(format!("not a homomorphism: {}", broken.join("; "))));
        }
        let flat: Vec<Vec<_>> = e.images.iter().map(|t| t.h.entries().to_vec()).collect();
        if rank(&RationalMatrix::from_rows(flat)?) != src.rank() {
            return Err(Error::Spec("images of the Cartan basis are dependent".into()));
        }
        if e.images.iter().any(|t| !t.h.is_diagonal()) {
            return Err(Error::Spec("Cartan images must be diagonal".into()));
        }
        Ok(e)
    }

    /// sl₂ inside so₄ with x ↦ x_{L1−L2} + x_{L1+L2}.
    pub fn diagonal_sl2_in_so4() -> Self {
        let so4 = ClassicalAlgebra::realize(AlgebraKind::new(Family::D, 2).unwrap());
        let a = so4.triple(&Root::new(vec![1, -1])).unwrap();
        let b = so4.triple(&Root::new(vec![1, 1])).unwrap();
        let x = &a.x + &b.x;
        let y = &a.y + &b.y;
        let h = bracket(&x, &y).unwrap();
        Self::from_images(
            AlgebraKind::new(Family::A, 1).unwrap(),
            AlgebraKind::new(Family::D, 2).unwrap(),
            vec![Triple { x, y, h }],
        )
        .expect("diagonal sl2 is a homomorphism")
    }

    pub fn source(&self) -> &ClassicalAlgebra {
        &self.source
    }

    pub fn target(&self) -> &ClassicalAlgebra {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<ClassicalAlgebra> {
        Arc::clone(&self.source)
    }

    pub fn target_arc(&self) -> Arc<ClassicalAlgebra> {
        Arc::clone(&self.target)
    }

    pub fn generator_images(&self) -> &[Triple] {
        &self.images
    }

    pub fn cartan_image(&self) -> Vec<&RationalMatrix> {
        self.images.iter().map(|t| &t.h).collect()
    }

    pub fn node_map(&self) -> Option<&[usize]> {
        self.node_map.as_deref()
    }

    pub fn is_canonical(&self) -> bool {
        self.node_map.is_some()
    }

    /// Violated simple-pair relations, empty for a homomorphism.
    pub fn check_homomorphism(&self) -> Vec<String> {
        let sys = self.source.system();
        let mut bad = Vec::new();
        let n = self.images.len();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&self.images[i], &self.images[j]);
                let aij = sys.pairing(&sys.simple_roots()[j].to_weight(), &sys.simple_roots()[i]).unwrap();
                let xy = bracket(&a.x, &b.y).unwrap();
                let want = if i == j { a.h.clone() } else { RationalMatrix::zeros(xy.rows(), xy.cols()) };
                if xy != want {
                    bad.push(format!("[x{i},y{j}]"));
                }
                if bracket(&a.h, &b.x).unwrap() != b.x.scale(&aij) {
                    bad.push(format!("[h{i},x{j}]"));
                }
                if bracket(&a.h, &b.y).unwrap() != b.y.scale(&(-aij)) {
                    bad.push(format!("[h{i},y{j}]"));
                }
                if !bracket(&a.h, &b.h).unwrap().is_zero() {
                    bad.push(format!("[h{i},h{j}]"));
                }
            }
        }
        bad
    }

    /// π: evaluate a target weight on the embedded coroots and read the
    /// result as a source weight.
    pub fn restrict(&self, beta: &Weight) -> Weight {
        let values: Vec<_> = self.images.iter().map(|t| self.target.evaluate(beta, &t.h)).collect();
        self.source.system().weight_from_coroot_values(&values).expect("rank matches")
    }

    pub fn restrict_root(&self, beta: &Root) -> Weight {
        self.restrict(&beta.to_weight())
    }

    /// Matrix of π: row i holds the diagonal of the i-th embedded coroot in
    /// L-coordinates of the target.
    pub fn restriction_matrix(&self) -> RationalMatrix {
        let d = self.target.system().dim();
        let rows = self
            .images
            .iter()
            .map(|t| {
                (0..d)
                    .map(|k| {
                        let mut unit = vec![num_traits::Zero::zero(); d];
                        unit[k] = num_traits::One::one();
                        self.target.evaluate(&Weight::new(unit), &t.h)
                    })
                    .collect()
            })
            .collect();
        RationalMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn check_condition_one(&self) -> ConditionOneReport {
        let ssys = self.source.system();
        let source: Vec<(Root, Weight)> =
            ssys.all_roots().into_iter().map(|a| (a.clone(), ssys.canonical(&a.to_weight()))).collect();
        let restricted: Vec<(Root, Weight)> =
            self.target.system().all_roots().into_iter().map(|b| (b.clone(), self.restrict_root(&b))).collect();
        tally_condition_one(&source, &restricted)
    }

    /// α* for every source root. When condition (1) holds α* is the unique
    /// root restricting to α; otherwise α* is read off the image of x_α,
    /// which works whenever root vectors go to root vectors (canonical type B).
    pub fn star_map(&self) -> Result<StarData> {
        let report = self.check_condition_one();
        let ssys = self.source.system();
        let tsys = self.target.system();
        let pairs: Vec<(Root, Root)> = if report.holds {
            let targets = tsys.all_roots();
            ssys.all_roots()
                .into_iter()
                .map(|a| {
                    let w = ssys.canonical(&a.to_weight());
                    let b = targets.iter().find(|b| self.restrict_root(b) == w).expect("condition (1) holds").clone();
                    (a, b)
                })
                .collect()
        } else {
            let p = ssys.positive_roots().len();
            let mut pairs = Vec::with_capacity(2 * p);
            for k in 0..p {
                let img = self.image_of_generator(Generator::X(k));
                let Some(b) = self.target.root_of(img) else {
                    return Err(Error::ConditionOneFails(describe_collisions(&report)));
                };
                pairs.push((ssys.positive_roots()[k].clone(), b));
            }
            for k in 0..p {
                let (a, b) = &pairs[k];
                pairs.push((-a, -b));
            }
            pairs
        };
        let positive_star = pairs.iter().filter_map(|(_, b)| tsys.positive_index(b).map(|_| b.clone())).collect();
        Ok(StarData { pairs, positive_star })
    }

    /// Positive target roots γ with [x_{α*}, y_γ] = 0 for every source
    /// simple α, in the target root order.
    pub fn embedding_elements(&self) -> Result<Vec<Root>> {
        let star = self.star_map()?;
        let tsys = self.target.system();
        for a in self.source.system().simple_roots() {
            let s = star.star(a).expect("star of a simple root");
            if tsys.positive_index(s).is_none() {
                return Err(Error::AssumptionViolated(format!("starred simple root {s} is negative")));
            }
        }
        let outside: Vec<&Root> =
            tsys.positive_roots().iter().filter(|r| !star.positive_star.contains(r)).collect();
        for s in &star.positive_star {
            for b in &outside {
                let rest = s - b;
                if outside.contains(&&rest) {
                    return Err(Error::AssumptionViolated(format!("{s} = ({b}) + ({rest}) with both outside the image")));
                }
            }
        }
        Ok(tsys
            .positive_roots()
            .iter()
            .zip(self.target.triples())
            .filter(|(_, t)| self.images.iter().all(|img| bracket(&img.x, &t.y).unwrap().is_zero()))
            .map(|(r, _)| r.clone())
            .collect())
    }

    /// Images of every source generator (y's, Cartan basis, x's).
    fn full_images(&self) -> &[RationalMatrix] {
        self.full_images.get_or_init(|| {
            let src = &*self.source;
            let sys = src.system();
            let p = sys.positive_roots().len();
            let mut xs: Vec<Option<RationalMatrix>> = vec![None; p];
            let mut ys: Vec<Option<RationalMatrix>> = vec![None; p];
            for (i, t) in self.images.iter().enumerate() {
                let k = sys.simple_index(i);
                xs[k] = Some(t.x.clone());
                ys[k] = Some(t.y.clone());
            }
            // Positive roots are sorted by height, so α − α_s is done first.
            for k in 0..p {
                if xs[k].is_some() {
                    continue;
                }
                let alpha = &sys.positive_roots()[k];
                let (s, b) = (0..sys.rank())
                    .find_map(|s| {
                        let rest = alpha - &sys.simple_roots()[s];
                        sys.positive_index(&rest).map(|b| (s, b))
                    })
                    .expect("non-simple positive root splits off a simple root");
                let si = sys.simple_index(s);
                let (tb, ts, ta) = (&src.triples()[b], &src.triples()[si], &src.triples()[k]);
                let cx = ratio(&bracket(&tb.x, &ts.x).unwrap(), &ta.x);
                let cy = ratio(&bracket(&tb.y, &ts.y).unwrap(), &ta.y);
                let ix = bracket(xs[b].as_ref().unwrap(), xs[si].as_ref().unwrap()).unwrap();
                let iy = bracket(ys[b].as_ref().unwrap(), ys[si].as_ref().unwrap()).unwrap();
                xs[k] = Some(ix.scale(&cx.recip()));
                ys[k] = Some(iy.scale(&cy.recip()));
            }
            let mut out: Vec<RationalMatrix> = ys.into_iter().map(Option::unwrap).collect();
            out.extend(self.images.iter().map(|t| t.h.clone()));
            out.extend(xs.into_iter().map(Option::unwrap));
            out
        })
    }

    /// Image of an arbitrary element of the source.
    pub fn image(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        let exp = self.source.expand_in_basis(m)?;
        let n = self.target.matrix_size();
        let mut out = RationalMatrix::zeros(n, n);
        for (i, c) in exp.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.full_images()[i].scale(c);
            }
        }
        Ok(out)
    }

    pub fn image_of_generator(&self, g: Generator) -> &RationalMatrix {
        &self.full_images()[self.source.generator_index(g)]
    }

    /// Every source x_α maps into a single target root space g_β, and h_β
    /// lies in the embedded Cartan.
    pub fn eigenvector_criterion(&self) -> bool {
        let cartan: Vec<Vec<_>> = self.images.iter().map(|t| t.h.entries().to_vec()).collect();
        let span = RationalMatrix::from_rows(cartan).unwrap().transpose();
        (0..self.source.system().positive_roots().len()).all(|k| {
            let img = self.image_of_generator(Generator::X(k));
            let Some(beta) = self.target.root_of(img) else {
                return false;
            };
            let h = match self.target.triple(&beta) {
                Some(t) => t.h.clone(),
                None => -&self.target.triple(&-&beta).unwrap().h,
            };
            solve_linear(&span, h.entries()).is_some()
        })
    }

    pub fn describe(&self) -> String {
        let how = if self.is_canonical() { "subdiagram" } else { "generator images" };
        format!("{} in {} ({how})", self.source.kind().name(), self.target.kind().name())
    }
}

fn ratio(a: &RationalMatrix, b: &RationalMatrix) -> crate::Rational {
    let k = b.entries().iter().position(|v| !v.is_zero()).expect("nonzero root vector");
    let c = &a.entries()[k] / &b.entries()[k];
    debug_assert_eq!(b.scale(&c), *a);
    c
}

pub fn describe_collisions(r: &ConditionOneReport) -> String {
    r.collisions
        .iter()
        .map(|c| {
            let pre: Vec<String> = c.preimages.iter().map(Root::describe).collect();
            format!("{} {} <- {{{}}}", c.alpha, c.alpha_weight, pre.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "Embedding({})", self.describe())
    }
}

/// Closed-form number of embedding elements for a canonical inclusion.
pub fn embedding_element_count_formula(family: Family, n: usize, m: usize) -> usize {
    let p = m - n;
    match family {
        Family::A => (p * p + p) / 2,
        Family::B | Family::D => p * p,
        Family::C => p * p + p,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub x: RationalMatrix,
    pub y: RationalMatrix,
    pub h: RationalMatrix,
}

/// JSON description of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmbeddingSpec {
    Canonical { family: Family, src_rank: usize, tgt_rank: usize },
    Preset { preset: String },
    General { source: AlgebraKind, target: AlgebraKind, generators: Vec<TripleSpec> },
}

impl EmbeddingSpec {
    pub fn build(&self) -> Result<Embedding> {
        match self {
            EmbeddingSpec::Canonical { family, src_rank, tgt_rank } => {
                Embedding::canonical_ranks(*family, *src_rank, *tgt_rank)
            }
            EmbeddingSpec::Preset { preset } if preset == "diagonal_sl2_so4" => Ok(Embedding::diagonal_sl2_in_so4()),
            EmbeddingSpec::Preset { preset } => Err(Error::Spec(format!("unknown preset {preset:?}"))),
            EmbeddingSpec::General { source, target, generators } => Embedding::from_images(
                *source,
                *target,
                generators.iter().map(|g| Triple { x: g.x.clone(), y: g.y.clone(), h: g.h.clone() }).collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn sl2_in_sl4_elements() {
        let e = Embedding::canonical_ranks(Family::A, 1, 3).unwrap();
        assert_eq!(e.generator_images()[0].x, RationalMatrix::unit(4, 0, 1));
        let star = e.star_map().unwrap();
        assert_eq!(star.positive_star, vec![r(&[1, -1, 0, 0])]);
        let els = e.embedding_elements().unwrap();
        assert_eq!(els, vec![r(&[0, 1, -1, 0]), r(&[0, 0, 1, -1]), r(&[0, 1, 0, -1])]);
    }

    #[test]
    fn tail_nodes_for_bcd() {
        let e = Embedding::canonical_ranks(Family::C, 2, 4).unwrap();
        let s: Vec<Root> = e.source().system().simple_roots().iter().map(|a| e.star_map().unwrap().star(a).unwrap().clone()).collect();
        assert_eq!(s, vec![r(&[0, 0, 1, -1]), r(&[0, 0, 0, 2])]);
        let e = Embedding::canonical_ranks(Family::D, 2, 4).unwrap();
        assert_eq!(e.node_map().unwrap(), &[2, 3]);
    }

    #[test]
    fn diagonal_collision() {
        let e = Embedding::diagonal_sl2_in_so4();
        assert_eq!(e.generator_images()[0].h, RationalMatrix::from_i64(&[&[2, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, 0]]));
        assert_eq!(e.restrict_root(&r(&[1, -1])), e.restrict_root(&r(&[1, 1])));
        let rep = e.check_condition_one();
        assert!(!rep.holds);
        let c = rep.collisions.iter().find(|c| c.alpha == r(&[1, -1])).unwrap();
        assert_eq!(c.alpha_weight, Weight::from_i64(&[2, 0]));
        assert_eq!(c.preimages, vec![r(&[1, 1]), r(&[1, -1])]);
        assert!(matches!(e.embedding_elements(), Err(Error::ConditionOneFails(_))));
        assert!(!e.eigenvector_criterion());
    }

    #[test]
    fn degenerate_source_holds_vacuously() {
        let rep = tally_condition_one(&[], &[(r(&[1, -1]), Weight::zero(0))]);
        assert!(rep.holds);
    }

    #[test]
    fn canonical_errors() {
        let a2 = AlgebraKind::new(Family::A, 2).unwrap();
        let b3 = AlgebraKind::new(Family::B, 3).unwrap();
        assert!(matches!(Embedding::canonical(a2, b3), Err(Error::FamilyMismatch(..))));
        assert!(matches!(Embedding::canonical(a2, a2), Err(Error::RankOrder { .. })));
    }

    #[test]
    fn full_image_is_a_homomorphism() {
        let e = Embedding::canonical_ranks(Family::B, 2, 3).unwrap();
        let src = e.source();
        for a in src.triples() {
            for b in src.triples() {
                let lhs = e.image(&bracket(&a.x, &b.y).unwrap()).unwrap();
                let rhs = bracket(&e.image(&a.x).unwrap(), &e.image(&b.y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(e.eigenvector_criterion());
    }

    #[test]
    fn spec_json() {
        let s: EmbeddingSpec = serde_json::from_str(r#"{"family":"A","src_rank":1,"tgt_rank":3}"#).unwrap();
        assert_eq!(s.build().unwrap().embedding_elements().unwrap().len(), 3);
        let p: EmbeddingSpec = serde_json::from_str(r#"{"preset":"diagonal_sl2_so4"}"#).unwrap();
        assert!(!p.build().unwrap().check_condition_one().holds);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(embedding_element_count_formula(Family::A, 2, 4), 3);
        assert_eq!(embedding_element_count_formula(Family::C, 1, 3), 6);
        assert_eq!(embedding_element_count_formula(Family::B, 4, 5), 1);
    }
}
