//! Matrix models of sl_{n+1}, so_{2n+1}, sp_{2n} and so_{2n}.
//!
//! so_{2n} and sp_{2n} use the forms [[0,I],[±I,0]]; so_{2n+1} uses the
//! (1+n+n) block form [[1,0,0],[0,0,I],[0,I,0]] with the extra index first.
//! With H_k = E_kk − E_{n+k,n+k} (shifted by one in type B):
//!
//! | root        | x_α (type D; for C the L_i + L_j row adds)  |
//! |-------------|---------------------------------------------|
//! | L_i − L_j   | E_ij − E_{n+j,n+i}                          |
//! | L_i + L_j   | E_{i,n+j} − E_{j,n+i}                       |
//! | 2L_i (C)    | E_{i,n+i}                                   |
//! | L_i (B)     | E_{i,0} − E_{0,n+i}                         |
//!
//! y_α is scaled so that [x_α, y_α] is exactly the coroot h_α.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{rat, Rational};
use crate::roots::{AlgebraKind, Family, Root, RootSystem, Weight};

pub fn bracket(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.rows() });
    }
    Ok(&a.checked_mul(b)? - &b.checked_mul(a)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub x: RationalMatrix,
    pub y: RationalMatrix,
    pub h: RationalMatrix,
}

/// A basis vector of the Lie algebra, in generator order:
/// all y's (root order), then the Cartan basis, then all x's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Y(usize),
    H(usize),
    X(usize),
}

#[derive(Clone)]
pub struct ClassicalAlgebra {
    kind: AlgebraKind,
    system: RootSystem,
    cartan: Vec<RationalMatrix>,
    triples: Vec<Triple>,
    form: Option<RationalMatrix>,
    expander: OnceLock<Expander>,
}

#[derive(Clone)]
struct Expander {
    /// Matrix positions (flattened) whose rows of the basis matrix are
    /// linearly independent.
    positions: Vec<usize>,
    /// Inverse of the basis matrix restricted to those rows.
    inverse: RationalMatrix,
}

/// Coefficients over the generator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub coeffs: Vec<Rational>,
    positive: usize,
    cartan: usize,
}

impl BasisExpansion {
    pub fn generator(&self, idx: usize) -> Generator {
        if idx < self.positive {
            Generator::Y(idx)
        } else if idx < self.positive + self.cartan {
            Generator::H(idx - self.positive)
        } else {
            Generator::X(idx - self.positive - self.cartan)
        }
    }

    pub fn get(&self, g: Generator) -> &Rational {
        let idx = match g {
            Generator::Y(i) => i,
            Generator::H(i) => self.positive + i,
            Generator::X(i) => self.positive + self.cartan + i,
        };
        &self.coeffs[idx]
    }

    pub fn nonzero(&self) -> Vec<(Generator, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.generator(i), c.clone()))
            .collect()
    }
}

impl ClassicalAlgebra {
    pub fn realize(kind: AlgebraKind) -> Self {
        let system = RootSystem::build(kind);
        let size = kind.matrix_size();
        let n = kind.rank();
        let unit = |i: usize, j: usize| RationalMatrix::unit(size, i, j);
        // Offset of the first block index (type B reserves index 0).
        let o = if kind.family() == Family::B { 1 } else { 0 };
        let hk = |k: usize| -> RationalMatrix {
            match kind.family() {
                Family::A => unit(k, k),
                _ => &unit(o + k, o + k) - &unit(o + n + k, o + n + k),
            }
        };
        let c_sign = if kind.family() == Family::C { rat(1) } else { rat(-1) };

        let triples: Vec<Triple> = system
            .positive_roots()
            .iter()
            .map(|root| {
                let nz: Vec<(usize, i64)> =
                    root.coords().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
                match (kind.family(), nz.as_slice()) {
                    (Family::A, &[(i, 1), (j, -1)]) => Triple {
                        x: unit(i, j),
                        y: unit(j, i),
                        h: &unit(i, i) - &unit(j, j),
                    },
                    (_, &[(i, 1), (j, -1)]) => Triple {
                        x: &unit(o + i, o + j) - &unit(o + n + j, o + n + i),
                        y: &unit(o + j, o + i) - &unit(o + n + i, o + n + j),
                        h: &hk(i) - &hk(j),
                    },
                    (_, &[(i, 1), (j, 1)]) => Triple {
                        x: &unit(o + i, o + n + j) + &unit(o + j, o + n + i).scale(&c_sign),
                        y: &unit(o + n + j, o + i) + &unit(o + n + i, o + j).scale(&c_sign),
                        h: &hk(i) + &hk(j),
                    },
                    (Family::C, &[(i, 2)]) => Triple { x: unit(i, n + i), y: unit(n + i, i), h: hk(i) },
                    (Family::B, &[(i, 1)]) => Triple {
                        x: &unit(1 + i, 0) - &unit(0, 1 + n + i),
                        y: (&unit(0, 1 + i) - &unit(1 + n + i, 0)).scale(&rat(2)),
                        h: hk(i).scale(&rat(2)),
                    },
                    _ => unreachable!("unexpected root {root}"),
                }
            })
            .collect();

        let cartan: Vec<RationalMatrix> =
            (0..n).map(|i| triples[system.simple_index(i)].h.clone()).collect();

        let form = match kind.family() {
            Family::A => None,
            Family::B => {
                let mut j = RationalMatrix::zeros(size, size);
                j[(0, 0)] = Rational::one();
                for k in 0..n {
                    j[(1 + k, 1 + n + k)] = Rational::one();
                    j[(1 + n + k, 1 + k)] = Rational::one();
                }
                Some(j)
            }
            Family::C | Family::D => {
                let mut j = RationalMatrix::zeros(size, size);
                let lower = if kind.family() == Family::C { rat(-1) } else { rat(1) };
                for k in 0..n {
                    j[(k, n + k)] = Rational::one();
                    j[(n + k, k)] = lower.clone();
                }
                Some(j)
            }
        };

        ClassicalAlgebra { kind, system, cartan, triples, form, expander: OnceLock::new() }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn matrix_size(&self) -> usize {
        self.kind.matrix_size()
    }

    /// Simple coroots h_{α_i}.
    pub fn cartan_basis(&self) -> &[RationalMatrix] {
        &self.cartan
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn triple(&self, root: &Root) -> Option<&Triple> {
        self.system.positive_index(root).map(|i| &self.triples[i])
    }

    pub fn defining_form(&self) -> Option<&RationalMatrix> {
        self.form.as_ref()
    }

    /// Number of basis vectors: 2|Φ⁺| + rank.
    pub fn dimension(&self) -> usize {
        2 * self.triples.len() + self.cartan.len()
    }

    pub fn generator_count(&self) -> usize {
        self.dimension()
    }

    pub fn generator_index(&self, g: Generator) -> usize {
        let p = self.triples.len();
        match g {
            Generator::Y(i) => i,
            Generator::H(i) => p + i,
            Generator::X(i) => p + self.cartan.len() + i,
        }
    }

    pub fn generator_at(&self, idx: usize) -> Generator {
        let p = self.triples.len();
        let r = self.cartan.len();
        if idx < p {
            Generator::Y(idx)
        } else if idx < p + r {
            Generator::H(idx - p)
        } else {
            Generator::X(idx - p - r)
        }
    }

    pub fn generator_matrix(&self, g: Generator) -> &RationalMatrix {
        match g {
            Generator::Y(i) => &self.triples[i].y,
            Generator::H(i) => &self.cartan[i],
            Generator::X(i) => &self.triples[i].x,
        }
    }

    pub fn generator_name(&self, g: Generator) -> String {
        match g {
            Generator::Y(i) => format!("y[{}]", self.system.positive_roots()[i]),
            Generator::H(i) => format!("h[{}]", self.system.simple_roots()[i]),
            Generator::X(i) => format!("x[{}]", self.system.positive_roots()[i]),
        }
    }

    pub fn is_member(&self, m: &RationalMatrix) -> bool {
        let n = self.matrix_size();
        if m.rows() != n || m.cols() != n {
            return false;
        }
        match &self.form {
            None => m.trace().is_zero(),
            Some(j) => (&(&m.transpose() * j) + &(j * m)).is_zero(),
        }
    }

    fn expander(&self) -> &Expander {
        self.expander.get_or_init(|| {
            let dim = self.dimension();
            let n2 = self.matrix_size() * self.matrix_size();
            // Rows = generators, columns = flattened matrix positions.
            let mut bt = RationalMatrix::zeros(dim, n2);
            for g in 0..dim {
                for (p, v) in self.generator_matrix(self.generator_at(g)).entries().iter().enumerate() {
                    bt[(g, p)] = v.clone();
                }
            }
            let (_, positions) = bt.rref();
            assert_eq!(positions.len(), dim, "generator matrices are not independent");
            let mut s = RationalMatrix::zeros(dim, dim);
            for (r, &p) in positions.iter().enumerate() {
                for g in 0..dim {
                    s[(r, g)] = bt[(g, p)].clone();
                }
            }
            let inverse = s.inverse().expect("selected rows are independent");
            Expander { positions, inverse }
        })
    }

    /// Coordinates of `m` over the generator basis.
    pub fn expand_in_basis(&self, m: &RationalMatrix) -> Result<BasisExpansion> {
        if !self.is_member(m) {
            return Err(Error::NotInAlgebra(self.kind.name()));
        }
        let ex = self.expander();
        let dim = self.dimension();
        let picked: Vec<Rational> = ex.positions.iter().map(|&p| m.entries()[p].clone()).collect();
        let mut coeffs = vec![Rational::zero(); dim];
        for (g, c) in coeffs.iter_mut().enumerate() {
            for (r, v) in picked.iter().enumerate() {
                if !v.is_zero() {
                    *c += &ex.inverse[(g, r)] * v;
                }
            }
        }
        let exp = BasisExpansion { coeffs, positive: self.triples.len(), cartan: self.cartan.len() };
        if self.combine(&exp) != *m {
            return Err(Error::NotInAlgebra(self.kind.name()));
        }
        Ok(exp)
    }

    pub fn combine(&self, exp: &BasisExpansion) -> RationalMatrix {
        let n = self.matrix_size();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, c) in exp.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.generator_matrix(self.generator_at(i)).scale(c);
            }
        }
        m
    }

    /// Diagonal position of the k-th L-coordinate.
    fn position(&self, k: usize) -> usize {
        match self.kind.family() {
            Family::B => 1 + k,
            _ => k,
        }
    }

    /// Value of a weight on a diagonal Cartan element: Σ_k w_k·H[pos_k,pos_k].
    pub fn evaluate(&self, w: &Weight, h: &RationalMatrix) -> Rational {
        w.coords().iter().enumerate().map(|(k, c)| c * &h[(self.position(k), self.position(k))]).sum()
    }

    /// Diagonal element dual to L_k (for type A the plain unit E_kk).
    pub fn dual_diagonal(&self, k: usize) -> RationalMatrix {
        let size = self.matrix_size();
        let p = self.position(k);
        match self.kind.family() {
            Family::A => RationalMatrix::unit(size, p, p),
            _ => {
                let q = p + self.kind.rank();
                &RationalMatrix::unit(size, p, p) - &RationalMatrix::unit(size, q, q)
            }
        }
    }

    /// The root α with [H, x] = α(H)x for every diagonal H, if x is a root
    /// vector of this realization.
    pub fn root_of(&self, x: &RationalMatrix) -> Option<Root> {
        if x.is_zero() || !self.is_member(x) {
            return None;
        }
        let (pi, pj) = (0..x.rows())
            .flat_map(|i| (0..x.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !x[(i, j)].is_zero())?;
        let mut coords = Vec::with_capacity(self.system.dim());
        for k in 0..self.system.dim() {
            let d = self.dual_diagonal(k);
            let b = bracket(&d, x).ok()?;
            let c = &b[(pi, pj)] / &x[(pi, pj)];
            if b != x.scale(&c) || !c.is_integer() {
                return None;
            }
            coords.push(crate::rational::as_integer(&c)?);
        }
        self.system.is_root(&coords).then(|| Root::new(coords))
    }

    /// Every violated triple invariant, as readable messages.
    pub fn check_triples(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let two = rat(2);
        for (root, t) in self.system.positive_roots().iter().zip(&self.triples) {
            for m in [&t.x, &t.y, &t.h] {
                if !self.is_member(m) {
                    bad.push(format!("{root}: element outside {}", self.kind.name()));
                }
            }
            let w = root.to_weight();
            for (i, h) in self.cartan.iter().enumerate() {
                let a = self.evaluate(&w, h);
                if bracket(h, &t.x).unwrap() != t.x.scale(&a) {
                    bad.push(format!("{root}: x is not an eigenvector of h_{i}"));
                }
                if bracket(h, &t.y).unwrap() != t.y.scale(&(-a)) {
                    bad.push(format!("{root}: y is not an eigenvector of h_{i}"));
                }
            }
            if bracket(&t.x, &t.y).unwrap() != t.h {
                bad.push(format!("{root}: [x,y] != h"));
            }
            if bracket(&t.h, &t.x).unwrap() != t.x.scale(&two) {
                bad.push(format!("{root}: [h,x] != 2x"));
            }
            if bracket(&t.h, &t.y).unwrap() != t.y.scale(&(-&two)) {
                bad.push(format!("{root}: [h,y] != -2y"));
            }
        }
        bad
    }
}

impl fmt::Debug for ClassicalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "ClassicalAlgebra({})", self.kind)
    }
}

/// JSON view of a triple table.
#[derive(Serialize, Deserialize)]
pub struct TripleRecord {
    pub root: Root,
    pub x: RationalMatrix,
    pub y: RationalMatrix,
    pub h: RationalMatrix,
}

impl ClassicalAlgebra {
    pub fn triple_records(&self) -> Vec<TripleRecord> {
        self.system
            .positive_roots()
            .iter()
            .zip(&self.triples)
            .map(|(r, t)| TripleRecord { root: r.clone(), x: t.x.clone(), y: t.y.clone(), h: t.h.clone() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(f: Family, n: usize) -> ClassicalAlgebra {
        ClassicalAlgebra::realize(AlgebraKind::new(f, n).unwrap())
    }

    fn e(n: usize, i: usize, j: usize) -> RationalMatrix {
        RationalMatrix::unit(n, i - 1, j - 1)
    }

    #[test]
    fn so4_matches_the_displayed_formulas() {
        let so4 = alg(Family::D, 2);
        let t = so4.triple(&Root::new(vec![1, -1])).unwrap();
        assert_eq!(t.x, &e(4, 1, 2) - &e(4, 4, 3));
        let t = so4.triple(&Root::new(vec![1, 1])).unwrap();
        assert_eq!(t.x, &e(4, 1, 4) - &e(4, 2, 3));
        assert_eq!(t.h, &(&e(4, 1, 1) - &e(4, 3, 3)) + &(&e(4, 2, 2) - &e(4, 4, 4)));
    }

    #[test]
    fn sl4_root_vectors_are_matrix_units() {
        let sl4 = alg(Family::A, 3);
        assert_eq!(sl4.triple(&Root::new(vec![1, -1, 0, 0])).unwrap().x, e(4, 1, 2));
        let b = bracket(&e(4, 1, 2), &e(4, 2, 3)).unwrap();
        assert_eq!(b, e(4, 1, 3));
    }

    #[test]
    fn every_family_passes_triple_checks() {
        for (f, n) in [(Family::A, 1), (Family::A, 3), (Family::B, 1), (Family::B, 3), (Family::C, 1), (Family::C, 3), (Family::D, 2), (Family::D, 4)] {
            let a = alg(f, n);
            assert_eq!(a.check_triples(), Vec::<String>::new(), "{f}{n}");
        }
    }

    #[test]
    fn membership() {
        let sl3 = alg(Family::A, 2);
        assert!(sl3.is_member(&RationalMatrix::zeros(3, 3)));
        assert!(!sl3.is_member(&RationalMatrix::identity(3)));
        let sp4 = alg(Family::C, 2);
        assert!(sp4.triples().iter().all(|t| sp4.is_member(&t.x)));
        assert!(!sp4.is_member(&RationalMatrix::unit(4, 0, 1)));
    }

    #[test]
    fn expansion_examples() {
        let sl4 = alg(Family::A, 3);
        let sys = sl4.system();
        let a13 = sys.positive_index(&Root::new(vec![1, 0, -1, 0])).unwrap();
        let b = bracket(&e(4, 1, 2), &e(4, 2, 3)).unwrap();
        assert_eq!(sl4.expand_in_basis(&b).unwrap().nonzero(), vec![(Generator::X(a13), rat(1))]);
        let t = &sl4.triples()[a13];
        let ex = sl4.expand_in_basis(&t.x.scale(&rat(3))).unwrap();
        assert_eq!(ex.nonzero(), vec![(Generator::X(a13), rat(3))]);
        let ex = sl4.expand_in_basis(&t.h).unwrap();
        assert!(ex.nonzero().iter().all(|(g, _)| matches!(g, Generator::H(_))));
        assert!(matches!(sl4.expand_in_basis(&RationalMatrix::identity(4)), Err(Error::NotInAlgebra(_))));
    }

    #[test]
    fn root_of_recovers_roots() {
        for (f, n) in [(Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 3)] {
            let a = alg(f, n);
            for (r, t) in a.system().positive_roots().iter().zip(a.triples()) {
                assert_eq!(a.root_of(&t.x).as_ref(), Some(r));
                assert_eq!(a.root_of(&t.y), Some(-r));
            }
            assert_eq!(a.root_of(&a.cartan_basis()[0]), None);
        }
    }
}
