//! PBW arithmetic in U(g) and the Verma-module action.
//!
//! Generators are indexed y's (root order), then the Cartan basis, then x's;
//! a PBW monomial is an exponent vector over that list and stands for the
//! product taken in index order. Left multiplication of a monomial g₁M' by a
//! generator g > g₁ uses g·g₁M' = g₁(g·M') + [g,g₁]·M', with brackets read off
//! the matrix model.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::rational::{pow, Rational, Q};
use crate::realization::{bracket, ClassicalAlgebra, Generator};
use crate::roots::{AlgebraKind, Root, Weight};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<u32>);

impl PbwMonomial {
    pub fn unit(generators: usize) -> Self {
        PbwMonomial(vec![0; generators])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        PbwMonomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub(crate) fn bumped(&self, g: usize, by: i64) -> Self {
        let mut v = self.0.clone();
        v[g] = (v[g] as i64 + by) as u32;
        PbwMonomial(v)
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

type Terms = BTreeMap<PbwMonomial, Rational>;

fn add_scaled(into: &mut Terms, from: &Terms, c: &Rational) {
    for (m, v) in from {
        let entry = into.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += v * c;
        if entry.is_zero() {
            into.remove(m);
        }
    }
}

fn add_term(into: &mut Terms, m: PbwMonomial, c: Rational) {
    let entry = into.entry(m.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        into.remove(&m);
    }
}

/// Element of U(g) in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct UeaElement {
    kind: AlgebraKind,
    terms: Terms,
}

impl UeaElement {
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
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

    pub fn coefficient(&self, m: &PbwMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &UeaElement) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch(self.kind.name(), other.kind.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check(other)?;
        let mut t = self.terms.clone();
        add_scaled(&mut t, &other.terms, &Rational::one());
        Ok(UeaElement { kind: self.kind, terms: t })
    }

    pub fn sub(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check(other)?;
        let mut t = self.terms.clone();
        add_scaled(&mut t, &other.terms, &-Rational::one());
        Ok(UeaElement { kind: self.kind, terms: t })
    }

    pub fn scale(&self, c: &Rational) -> UeaElement {
        if c.is_zero() {
            return UeaElement { kind: self.kind, terms: Terms::new() };
        }
        UeaElement { kind: self.kind, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Largest total exponent among the terms.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(PbwMonomial::total_degree).max().unwrap_or(0)
    }
}

impl fmt::Debug for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "UeaElement[{}] {:?}", self.kind.name(), self.terms)
    }
}

/// JSON form of one PBW term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub y: Vec<u32>,
    pub h: Vec<u32>,
    pub x: Vec<u32>,
    pub coeff: Q,
}

/// Vector z·v⁺ of the Verma module M(λ), stored as z ∈ U(n⁻).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaVector {
    pub element: UeaElement,
    pub highest_weight: Weight,
}

/// Sub-Lie-algebra spanned by x_α, y_α (and their brackets) for a set of
/// positive roots of the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub roots: Vec<usize>,
}

impl Subalgebra {
    pub fn full(alg: &ClassicalAlgebra) -> Self {
        Subalgebra { roots: (0..alg.system().positive_roots().len()).collect() }
    }

    pub fn from_roots(alg: &ClassicalAlgebra, roots: &[Root]) -> Result<Self> {
        let idx = roots
            .iter()
            .map(|r| {
                alg.system().positive_index(r).ok_or_else(|| Error::NotARoot {
                    kind: alg.kind().name(),
                    coords: r.describe(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subalgebra { roots: idx })
    }

    /// The image of the source of `e` inside its target.
    pub fn of_embedding(e: &Embedding) -> Result<Self> {
        Self::from_roots(e.target(), &e.star_map()?.positive_star)
    }
}

/// U(g) for one realized algebra, with a memo table for left multiplication
/// by generators. Not shareable across threads; build one per worker.
pub struct Uea {
    alg: Arc<ClassicalAlgebra>,
    /// brackets[a][b] = [g_a, g_b] for a > b.
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    memo: RefCell<HashMap<(usize, PbwMonomial), Terms>>,
}

impl Uea {
    pub fn new(alg: Arc<ClassicalAlgebra>) -> Self {
        let dim = alg.generator_count();
        let mut brackets = vec![Vec::new(); dim];
        for a in 0..dim {
            brackets[a] = (0..a).map(|b| Self::compute_bracket(&alg, a, b)).collect();
        }
        Uea { alg, brackets, memo: RefCell::new(HashMap::new()) }
    }

    pub fn for_kind(kind: AlgebraKind) -> Self {
        Self::new(Arc::new(ClassicalAlgebra::realize(kind)))
    }

    fn compute_bracket(alg: &ClassicalAlgebra, a: usize, b: usize) -> Vec<(usize, Rational)> {
        let (ga, gb) = (alg.generator_at(a), alg.generator_at(b));
        let sys = alg.system();
        // [h_i, x_α] = α(h_i) x_α, [h_i, y_α] = −α(h_i) y_α.
        let direct = match (ga, gb) {
            (Generator::X(k), Generator::H(i)) => Some((a, -sys.pairing(&sys.positive_roots()[k].to_weight(), &sys.simple_roots()[i]).unwrap())),
            (Generator::H(i), Generator::Y(k)) => Some((b, -sys.pairing(&sys.positive_roots()[k].to_weight(), &sys.simple_roots()[i]).unwrap())),
            (Generator::H(_), Generator::H(_)) => return Vec::new(),
            _ => None,
        };
        if let Some((g, c)) = direct {
            return if c.is_zero() { Vec::new() } else { vec![(g, c)] };
        }
        let m = bracket(alg.generator_matrix(ga), alg.generator_matrix(gb)).unwrap();
        let ex = alg.expand_in_basis(&m).expect("bracket stays in the algebra");
        ex.coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn algebra(&self) -> &ClassicalAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<ClassicalAlgebra> {
        Arc::clone(&self.alg)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.alg.kind()
    }

    pub fn generator_count(&self) -> usize {
        self.alg.generator_count()
    }

    /// [g_a, g_b] over the generator basis.
    pub fn generator_bracket(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Greater => self.brackets[a][b].clone(),
            std::cmp::Ordering::Less => self.brackets[b][a].iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }

    pub fn zero(&self) -> UeaElement {
        UeaElement { kind: self.kind(), terms: Terms::new() }
    }

    pub fn one(&self) -> UeaElement {
        self.monomial(PbwMonomial::unit(self.generator_count()))
    }

    pub fn monomial(&self, m: PbwMonomial) -> UeaElement {
        assert_eq!(m.0.len(), self.generator_count(), "monomial length");
        let mut terms = Terms::new();
        terms.insert(m, Rational::one());
        UeaElement { kind: self.kind(), terms }
    }

    pub fn from_terms(&self, terms: Vec<(PbwMonomial, Rational)>) -> UeaElement {
        let mut t = Terms::new();
        for (m, c) in terms {
            add_term(&mut t, m, c);
        }
        UeaElement { kind: self.kind(), terms: t }
    }

    pub fn generator(&self, g: Generator) -> UeaElement {
        let idx = self.alg.generator_index(g);
        self.monomial(PbwMonomial::unit(self.generator_count()).bumped(idx, 1))
    }

    fn root_index(&self, r: &Root) -> Result<usize> {
        self.alg
            .system()
            .positive_index(r)
            .ok_or_else(|| Error::NotARoot { kind: self.kind().name(), coords: r.describe() })
    }

    pub fn x(&self, r: &Root) -> Result<UeaElement> {
        Ok(self.generator(Generator::X(self.root_index(r)?)))
    }

    pub fn y(&self, r: &Root) -> Result<UeaElement> {
        Ok(self.generator(Generator::Y(self.root_index(r)?)))
    }

    /// Product y_{β₁}^{k₁}·y_{β₂}^{k₂}⋯ in the given order, normalized.
    pub fn y_product(&self, factors: &[(Root, u32)]) -> Result<UeaElement> {
        let mut acc = self.one();
        for (r, k) in factors {
            let y = self.y(r)?;
            for _ in 0..*k {
                acc = self.multiply(&acc, &y)?;
            }
        }
        Ok(acc)
    }

    /// An element of the Lie algebra as a degree-one element.
    pub fn from_matrix(&self, m: &crate::RationalMatrix) -> Result<UeaElement> {
        let ex = self.alg.expand_in_basis(m)?;
        let unit = PbwMonomial::unit(self.generator_count());
        Ok(self.from_terms(
            ex.coeffs.into_iter().enumerate().map(|(g, c)| (unit.bumped(g, 1), c)).collect(),
        ))
    }

    fn gen_times(&self, g: usize, m: &PbwMonomial) -> Terms {
        let key = (g, m.clone());
        if let Some(t) = self.memo.borrow().get(&key) {
            return t.clone();
        }
        let mut out = Terms::new();
        match m.first() {
            Some(f) if f < g => {
                let rest = m.bumped(f, -1);
                for (mm, c) in self.gen_times(g, &rest) {
                    add_scaled(&mut out, &self.gen_times(f, &mm), &c);
                }
                for (k, c) in &self.brackets[g][f] {
                    add_scaled(&mut out, &self.gen_times(*k, &rest), c);
                }
            }
            _ => {
                out.insert(m.bumped(g, 1), Rational::one());
            }
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn monomial_times(&self, m: &PbwMonomial, right: &Terms) -> Terms {
        let mut cur = right.clone();
        for g in (0..m.0.len()).rev() {
            for _ in 0..m.0[g] {
                let mut next = Terms::new();
                for (mm, c) in &cur {
                    add_scaled(&mut next, &self.gen_times(g, mm), c);
                }
                cur = next;
            }
        }
        cur
    }

    pub fn multiply(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        self.check(a)?;
        a.check(b)?;
        let mut out = Terms::new();
        for (m, c) in &a.terms {
            add_scaled(&mut out, &self.monomial_times(m, &b.terms), c);
        }
        Ok(UeaElement { kind: self.kind(), terms: out })
    }

    fn check(&self, a: &UeaElement) -> Result<()> {
        if a.kind != self.kind() {
            return Err(Error::AlgebraMismatch(self.kind().name(), a.kind.name()));
        }
        Ok(())
    }

    /// ab − ba.
    pub fn commutator(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        self.multiply(a, b)?.sub(&self.multiply(b, a)?)
    }

    /// x_α z − z x_α for a stored positive root vector.
    pub fn ad_generator(&self, root: &Root, z: &UeaElement) -> Result<UeaElement> {
        self.commutator(&self.x(root)?, z)
    }

    /// ω = Σ (t_i − r_i) α_i, requiring every term to share it. The zero
    /// element is reported with weight 0.
    pub fn weight_of(&self, z: &UeaElement) -> Result<Weight> {
        self.check(z)?;
        let sys = self.alg.system();
        let mut found: Option<Weight> = None;
        for m in z.terms.keys() {
            let w = sys.canonical(&self.monomial_weight(m));
            match &found {
                None => found = Some(w),
                Some(f) if *f != w => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(found.unwrap_or_else(|| Weight::zero(sys.dim())))
    }

    fn monomial_weight(&self, m: &PbwMonomial) -> Weight {
        let sys = self.alg.system();
        let p = sys.positive_roots().len();
        let r = sys.rank();
        let mut w = Weight::zero(sys.dim());
        for (k, root) in sys.positive_roots().iter().enumerate() {
            let net = m.0[p + r + k] as i64 - m.0[k] as i64;
            if net != 0 {
                w = &w + &root.to_weight().scale(&crate::rational::rat(net));
            }
        }
        w
    }

    /// Σ (t_i − r_i) for a monomial.
    pub fn monomial_degree(&self, m: &PbwMonomial) -> i64 {
        let p = self.alg.system().positive_roots().len();
        let r = self.alg.system().rank();
        (0..p).map(|k| m.0[p + r + k] as i64 - m.0[k] as i64).sum()
    }

    pub fn is_y_only(&self, z: &UeaElement) -> bool {
        let p = self.alg.system().positive_roots().len();
        z.terms.keys().all(|m| m.0[p..].iter().all(|&e| e == 0))
    }

    /// Images of the source's simple x's as degree-one elements here.
    pub fn embedded_simple_x(&self, e: &Embedding) -> Result<Vec<UeaElement>> {
        if e.target().kind() != self.kind() {
            return Err(Error::AlgebraMismatch(self.kind().name(), e.target().kind().name()));
        }
        e.generator_images().iter().map(|t| self.from_matrix(&t.x)).collect()
    }

    /// [x, z] = 0 for every x in `xs`.
    pub fn commutes_with_all(&self, z: &UeaElement, xs: &[UeaElement]) -> Result<bool> {
        for x in xs {
            if !self.commutator(x, z)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// z centralizes the embedded n₁ (checked on simple root vectors).
    pub fn in_centralizer(&self, z: &UeaElement, e: &Embedding) -> Result<bool> {
        self.commutes_with_all(z, &self.embedded_simple_x(e)?)
    }

    pub fn highest_weight_vector(&self, lambda: &Weight) -> VermaVector {
        VermaVector { element: self.one(), highest_weight: self.alg.system().canonical(lambda) }
    }

    pub fn verma_vector(&self, z: &UeaElement, lambda: &Weight) -> Result<VermaVector> {
        self.check(z)?;
        let v = VermaVector { element: z.clone(), highest_weight: self.alg.system().canonical(lambda) };
        self.reduce(v)
    }

    /// Drops terms with an x-part and evaluates the Cartan part on λ.
    fn reduce(&self, v: VermaVector) -> Result<VermaVector> {
        let sys = self.alg.system();
        let p = sys.positive_roots().len();
        let r = sys.rank();
        let values = sys.coroot_values(&v.highest_weight)?;
        let mut out = Terms::new();
        for (m, c) in &v.element.terms {
            if m.0[p + r..].iter().any(|&e| e > 0) {
                continue;
            }
            let mut coeff = c.clone();
            for i in 0..r {
                coeff *= pow(&values[i], m.0[p + i]);
            }
            let mut y = m.0.clone();
            y[p..].iter_mut().for_each(|e| *e = 0);
            add_term(&mut out, PbwMonomial(y), coeff);
        }
        Ok(VermaVector { element: UeaElement { kind: self.kind(), terms: out }, highest_weight: v.highest_weight })
    }

    pub fn verma_act(&self, u: &UeaElement, v: &VermaVector) -> Result<VermaVector> {
        let prod = self.multiply(u, &v.element)?;
        self.reduce(VermaVector { element: prod, highest_weight: v.highest_weight.clone() })
    }

    /// x_{α*}·z v⁺ = 0 in M(λ) for every source simple α.
    pub fn annihilates_highest(&self, z: &UeaElement, lambda: &Weight, e: &Embedding) -> Result<bool> {
        self.annihilated_by(z, lambda, &self.embedded_simple_x(e)?)
    }

    pub fn annihilated_by(&self, z: &UeaElement, lambda: &Weight, xs: &[UeaElement]) -> Result<bool> {
        let v = self.verma_vector(z, lambda)?;
        for x in xs {
            if !self.verma_act(x, &v)?.element.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates (in simple roots) of the weight of a y-only monomial
    /// relative to the highest weight; all entries are ≤ 0.
    fn offset(&self, m: &PbwMonomial) -> Vec<i64> {
        let sys = self.alg.system();
        let mut out = vec![0i64; sys.rank()];
        for k in 0..sys.positive_roots().len() {
            if m.0[k] > 0 {
                for (o, c) in out.iter_mut().zip(sys.simple_coefficients(k)) {
                    *o -= m.0[k] as i64 * c;
                }
            }
        }
        out
    }

    fn homogeneous_offset(&self, v: &VermaVector) -> Result<Option<Vec<i64>>> {
        let mut found: Option<Vec<i64>> = None;
        for m in v.element.terms.keys() {
            let o = self.offset(m);
            match &found {
                None => found = Some(o),
                Some(f) if *f != o => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    /// Whether `target` lies in the span of u·g for g in `generators` and u
    /// a word of length ≤ `degree_bound` in the x's and y's of `action`.
    /// Works one weight space at a time; vectors whose weight can no longer
    /// reach the target weight are dropped.
    pub fn graded_membership(
        &self,
        target: &VermaVector,
        generators: &[VermaVector],
        action: &Subalgebra,
        degree_bound: usize,
    ) -> Result<bool> {
        let gens: Vec<(VermaVector, &Subalgebra)> = generators.iter().map(|g| (g.clone(), action)).collect();
        self.span_contains(target, &gens, degree_bound)
    }

    /// As [`Uea::graded_membership`], with a separate acting subalgebra per
    /// generator.
    pub fn span_contains(
        &self,
        target: &VermaVector,
        generators: &[(VermaVector, &Subalgebra)],
        degree_bound: usize,
    ) -> Result<bool> {
        let Some(t_off) = self.homogeneous_offset(target)? else {
            return Ok(true);
        };
        let sys = self.alg.system();
        let hmax = sys.max_height();
        let cmax: Vec<i64> = (0..sys.rank())
            .map(|i| (0..sys.positive_roots().len()).map(|k| sys.simple_coefficients(k)[i]).max().unwrap_or(0))
            .collect();
        let reachable = |off: &[i64], steps: usize| -> bool {
            let s = steps as i64;
            let diff: Vec<i64> = off.iter().zip(&t_off).map(|(a, b)| a - b).collect();
            diff.iter().sum::<i64>().abs() <= s * hmax && diff.iter().zip(&cmax).all(|(d, c)| d.abs() <= s * c)
        };

        let mut spaces: HashMap<Vec<i64>, Echelon> = HashMap::new();
        // Frontier entries: (vector, acting roots).
        let mut frontier: Vec<(Vec<i64>, VermaVector, &Subalgebra)> = Vec::new();
        for (g, act) in generators {
            if g.highest_weight != target.highest_weight {
                return Err(Error::Spec("generators live in a different Verma module".into()));
            }
            let Some(off) = self.homogeneous_offset(g)? else { continue };
            if !reachable(&off, degree_bound) {
                continue;
            }
            if let Some(v) = spaces.entry(off.clone()).or_default().insert(&g.element.terms) {
                frontier.push((off, self.wrap(v, &target.highest_weight), act));
            }
        }
        let unit = PbwMonomial::unit(self.generator_count());
        let p = sys.positive_roots().len();
        let r = sys.rank();
        for depth in 1..=degree_bound {
            let remaining = degree_bound - depth;
            let mut next = Vec::new();
            for (off, v, act) in &frontier {
                for &k in &act.roots {
                    let coeffs = sys.simple_coefficients(k);
                    for (gidx, sign) in [(p + r + k, 1i64), (k, -1i64)] {
                        let new_off: Vec<i64> = off.iter().zip(coeffs).map(|(o, c)| o + sign * c).collect();
                        if new_off.iter().any(|&o| o > 0) || !reachable(&new_off, remaining) {
                            continue;
                        }
                        let u = self.monomial(unit.bumped(gidx, 1));
                        let w = self.verma_act(&u, v)?;
                        if w.element.is_zero() {
                            continue;
                        }
                        if let Some(red) = spaces.entry(new_off.clone()).or_default().insert(&w.element.terms) {
                            next.push((new_off, self.wrap(red, &target.highest_weight), *act));
                        }
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        Ok(match spaces.get(&t_off) {
            Some(space) => space.contains(&target.element.terms),
            None => false,
        })
    }

    fn wrap(&self, terms: Terms, lambda: &Weight) -> VermaVector {
        VermaVector { element: UeaElement { kind: self.kind(), terms }, highest_weight: lambda.clone() }
    }

    pub fn to_records(&self, z: &UeaElement) -> Vec<TermRecord> {
        let p = self.alg.system().positive_roots().len();
        let r = self.alg.system().rank();
        z.terms
            .iter()
            .map(|(m, c)| TermRecord {
                y: m.0[..p].to_vec(),
                h: m.0[p..p + r].to_vec(),
                x: m.0[p + r..].to_vec(),
                coeff: Q(c.clone()),
            })
            .collect()
    }

    pub fn from_records(&self, recs: &[TermRecord]) -> Result<UeaElement> {
        let p = self.alg.system().positive_roots().len();
        let r = self.alg.system().rank();
        let mut terms = Vec::new();
        for t in recs {
            if t.y.len() != p || t.h.len() != r || t.x.len() != p {
                return Err(Error::Spec(format!("term shape must be ({p},{r},{p})")));
            }
            let mut e = t.y.clone();
            e.extend(&t.h);
            e.extend(&t.x);
            terms.push((PbwMonomial(e), t.coeff.0.clone()));
        }
        Ok(self.from_terms(terms))
    }

    /// Readable form such as `2 y[L1-L2]^2 h[L1-L2]`.
    pub fn describe(&self, z: &UeaElement) -> String {
        if z.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = z
            .terms
            .iter()
            .map(|(m, c)| {
                let mut f: Vec<String> = Vec::new();
                for (g, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let name = self.alg.generator_name(self.alg.generator_at(g));
                    f.push(if e == 1 { name } else { format!("{name}^{e}") });
                }
                let body = if f.is_empty() { "1".to_string() } else { f.join(" ") };
                if c.is_one() {
                    body
                } else {
                    format!("{c} {body}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Vectors with distinct leading (largest) monomials.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<PbwMonomial, Terms>,
}

impl Echelon {
    fn reduce(&self, v: &Terms) -> Terms {
        let mut v = v.clone();
        while let Some((lead, c)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&lead) {
                Some(row) => add_scaled(&mut v, row, &-c),
                None => break,
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns the reduced vector that was
    /// added.
    fn insert(&mut self, v: &Terms) -> Option<Terms> {
        let red = self.reduce(v);
        let (lead, c) = red.iter().next_back()?;
        let inv = c.recip();
        let lead = lead.clone();
        let norm: Terms = red.iter().map(|(m, x)| (m.clone(), x * &inv)).collect();
        self.rows.insert(lead, norm);
        Some(red)
    }

    fn contains(&self, v: &Terms) -> bool {
        let mut v = v.clone();
        loop {
            let Some((lead, c)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
                return true;
            };
            match self.rows.get(&lead) {
                Some(row) => add_scaled(&mut v, row, &-c),
                None => return false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::roots::Family;

    fn r(v: &[i64]) -> Root {
        Root::new(v.to_vec())
    }

    fn sl(n: usize) -> Uea {
        Uea::for_kind(AlgebraKind::new(Family::A, n).unwrap())
    }

    #[test]
    fn sl2_defining_relation() {
        let u = sl(1);
        let a = r(&[1, -1]);
        let (x, y) = (u.x(&a).unwrap(), u.y(&a).unwrap());
        let h = u.generator(Generator::H(0));
        let xy = u.multiply(&x, &y).unwrap();
        let yx = u.multiply(&y, &x).unwrap();
        assert_eq!(xy, yx.add(&h).unwrap());
        assert_eq!(yx.len(), 1);
    }

    #[test]
    fn commuting_generators() {
        let u = sl(3);
        let a = u.y(&r(&[1, 0, 0, -1])).unwrap();
        let b = u.y(&r(&[0, 1, -1, 0])).unwrap();
        assert_eq!(u.multiply(&a, &b).unwrap(), u.multiply(&b, &a).unwrap());
    }

    #[test]
    fn ad_on_square_in_sl2() {
        let u = sl(1);
        let a = r(&[1, -1]);
        let y = u.y(&a).unwrap();
        let y2 = u.multiply(&y, &y).unwrap();
        let ad = u.ad_generator(&a, &y2).unwrap();
        // [x, y²] = 2 y h − 2 y in PBW order.
        let h = u.generator(Generator::H(0));
        let want = u.multiply(&y, &h).unwrap().scale(&rat(2)).sub(&y.scale(&rat(2))).unwrap();
        assert_eq!(ad, want);
    }

    #[test]
    fn weights() {
        let u = sl(3);
        assert_eq!(u.weight_of(&u.one()).unwrap(), Weight::zero(4));
        let z = u.y_product(&[(r(&[0, 1, -1, 0]), 1), (r(&[0, 0, 1, -1]), 1)]).unwrap();
        let want = u.algebra().system().canonical(&Weight::from_i64(&[0, -1, 0, 1]));
        assert_eq!(u.weight_of(&z).unwrap(), want);
        let mixed = u.y(&r(&[1, -1, 0, 0])).unwrap().add(&u.one()).unwrap();
        assert_eq!(u.weight_of(&mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn verma_basics() {
        let u = sl(1);
        let a = r(&[1, -1]);
        let lam = u.algebra().system().weight_from_coroot_values(&[rat(5)]).unwrap();
        let v = u.highest_weight_vector(&lam);
        let h = u.generator(Generator::H(0));
        assert_eq!(u.verma_act(&h, &v).unwrap().element, u.one().scale(&rat(5)));
        assert!(u.verma_act(&u.x(&a).unwrap(), &v).unwrap().element.is_zero());
        let yv = u.verma_act(&u.y(&a).unwrap(), &v).unwrap();
        assert_eq!(u.verma_act(&u.x(&a).unwrap(), &yv).unwrap().element, u.one().scale(&rat(5)));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = sl(1);
        let b = sl(2);
        assert!(matches!(a.multiply(&a.one(), &b.one()), Err(Error::AlgebraMismatch(..))));
    }

    #[test]
    fn membership_basics() {
        let u = sl(2);
        let full = Subalgebra::full(u.algebra());
        let a = r(&[0, 1, -1]);
        let lam = Weight::from_i64(&[0, 3, 3]);
        let v = u.highest_weight_vector(&lam);
        let yv = u.verma_vector(&u.y(&a).unwrap(), &lam).unwrap();
        assert!(u.graded_membership(&yv, &[yv.clone()], &full, 1).unwrap());
        assert!(!u.graded_membership(&v, &[yv.clone()], &full, 4).unwrap());
        // y generates back up to v⁺ when λ(h) ≠ 0.
        let lam2 = Weight::from_i64(&[2, 1, 0]);
        let v2 = u.highest_weight_vector(&lam2);
        let yv2 = u.verma_vector(&u.y(&a).unwrap(), &lam2).unwrap();
        assert!(u.graded_membership(&v2, &[yv2], &full, 1).unwrap());
    }

    #[test]
    fn records_roundtrip() {
        let u = sl(2);
        let z = u.multiply(&u.x(&r(&[1, -1, 0])).unwrap(), &u.y(&r(&[1, 0, -1])).unwrap()).unwrap();
        let recs = u.to_records(&z);
        assert_eq!(u.from_records(&recs).unwrap(), z);
        let s = serde_json::to_string(&recs).unwrap();
        let back: Vec<TermRecord> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, recs);
    }
}
