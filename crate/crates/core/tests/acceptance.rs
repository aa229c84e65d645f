//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any
//! criterion fails.

use std::time::Instant;

use glider_core::embedding::{embedding_element_count_formula, Embedding};
use glider_core::glider::{weight_spec_coroot, FactorSpec, GliderSpec, SubfragmentWitness, WeightBasis, WeightSpec};
use glider_core::linalg::{jordan_partition, RationalMatrix};
use glider_core::orbits::{hasse, orbit_labels, reachability, EmpiricalConfig, OrbitLabel};
use glider_core::partition::Partition;
use glider_core::rational::{frac, rat, Q};
use glider_core::realization::{bracket, ClassicalAlgebra};
use glider_core::roots::{AlgebraKind, Family, Root};
use glider_core::uea::{PbwMonomial, Uea};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn root(v: &[i64]) -> Root {
    Root::new(v.to_vec())
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    let mut cells = 0;
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for m in 2..=6 {
            for n in 1..m {
                let e = Embedding::canonical_ranks(family, n, m).unwrap();
                let got = e.embedding_elements().unwrap().len();
                let want = embedding_element_count_formula(family, n, m);
                cells += 1;
                if got != want {
                    bad.push(format!("{family}({n},{m}): {got} vs {want}"));
                }
            }
        }
    }
    (bad.is_empty(), format!("{} of {cells} cells match; mismatches: {}", cells - bad.len(), bad.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut failing = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for m in 2..=6 {
            for n in 1..m {
                if !Embedding::canonical_ranks(family, n, m).unwrap().check_condition_one().holds {
                    failing.push(format!("{family}({n},{m})"));
                }
            }
        }
    }
    let e = Embedding::diagonal_sl2_in_so4();
    let rep = e.check_condition_one();
    let collide = e.restrict_root(&root(&[1, -1])) == e.restrict_root(&root(&[1, 1]));
    let ok = failing.is_empty() && !rep.holds && collide;
    (ok, format!("canonical failures: {failing:?}; diagonal so4 holds = {}, collision = {collide}", rep.holds))
}

fn fail_example() -> (Uea, Embedding) {
    let e = Embedding::canonical_ranks(Family::A, 1, 3).unwrap();
    (Uea::new(e.target_arc()), e)
}

fn criterion_3() -> Outcome {
    let (u, e) = fail_example();
    let z1 = u.y_product(&[(root(&[1, 0, 0, -1]), 1), (root(&[0, 1, -1, 0]), 1)]).unwrap();
    let z2 = u.y_product(&[(root(&[0, 1, 0, -1]), 1), (root(&[1, 0, -1, 0]), 1)]).unwrap();
    let a = u.in_centralizer(&z1, &e).unwrap();
    let b = u.in_centralizer(&z2, &e).unwrap();
    let c = u.in_centralizer(&z1.sub(&z2).unwrap(), &e).unwrap();
    (!a && !b && c, format!("z1: {a}, z2: {b}, z1 - z2: {c}"))
}

/// Every y-only PBW monomial of degree ≤ 3.
fn y_monomials(u: &Uea, max: u32) -> Vec<PbwMonomial> {
    let p = u.algebra().system().positive_roots().len();
    let g = u.generator_count();
    let mut out = Vec::new();
    let mut cur = vec![0u32; p];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, g: usize, out: &mut Vec<PbwMonomial>) {
        if i == cur.len() {
            let mut e = cur.clone();
            e.resize(g, 0);
            out.push(PbwMonomial::from_exponents(e));
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, g, out);
        }
        cur[i] = 0;
    }
    rec(0, max, &mut cur, g, &mut out);
    out
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [1, 2] {
        let e = Embedding::canonical_ranks(Family::A, n, 3).unwrap();
        let u = Uea::new(e.target_arc());
        let sys = u.algebra().system();
        let elements: Vec<usize> =
            e.embedding_elements().unwrap().iter().map(|r| sys.positive_index(r).unwrap()).collect();
        for m in y_monomials(&u, 3) {
            let z = u.monomial(m.clone());
            let predicted = m.exponents().iter().enumerate().all(|(i, &k)| k == 0 || elements.contains(&i));
            let got = u.in_centralizer(&z, &e).unwrap();
            checked += 1;
            if got != predicted {
                bad.push(format!("sl{}: {}", n + 1, u.describe(&z)));
            }
        }
    }
    (bad.is_empty(), format!("{checked} monomials; disagreements: {bad:?}"))
}

fn sl234_spec(lambda1: i64) -> GliderSpec {
    let f = |r: &[i64]| vec![FactorSpec { root: root(r), exp: 1 }];
    GliderSpec {
        family: Family::A,
        ranks: vec![1, 2, 3],
        weights: vec![
            weight_spec_coroot(&[rat(lambda1)]),
            weight_spec_coroot(&[rat(2), rat(1)]),
            weight_spec_coroot(&[rat(2), rat(0), rat(0)]),
        ],
        monomials: vec![f(&[0, 1, -1]), f(&[0, 0, 1, -1])],
        extra_generators: vec![],
    }
}

fn criterion_5() -> Outcome {
    let g = sl234_spec(-1).build().unwrap();
    let rep = g.verify(4).unwrap();
    let top = g.chain().algebra(2);
    let h34 = &RationalMatrix::unit(4, 2, 2) - &RationalMatrix::unit(4, 3, 3);
    let pairing = top.evaluate(&g.weights()[2], &h34);
    let ok = rep.cond1_ok.iter().all(|&b| b) && rep.cond2_ok.iter().all(|&b| b) && rep.composition_ok && pairing == rat(0);
    (
        ok,
        format!(
            "cond1 {:?}, cond2 {:?}, composition {}, lambda3(H3-H4) = {pairing}; forced lambda1 = {}",
            rep.cond1_ok, rep.cond2_ok, rep.composition_ok, rep.levels[0].lambda_expected
        ),
    )
}

fn criterion_6() -> Outcome {
    // Grid over z = 1 gliders sl2 ⊂ sl3 with λ₂ restricting to λ₁.
    let mut mismatches = 0;
    let mut count = 0;
    for num in -12i64..13 {
        for den in [1i64, 2] {
            if count == 50 {
                break;
            }
            let l1 = frac(num, den);
            let spec = GliderSpec {
                family: Family::A,
                ranks: vec![1, 2],
                weights: vec![weight_spec_coroot(&[l1.clone()]), weight_spec_coroot(&[l1.clone(), frac(1, 3)])],
                monomials: vec![vec![]],
                extra_generators: vec![],
            };
            let g = spec.build().unwrap();
            let verdict = g.classify().unwrap().verdict;
            let anti = g.uea(0).algebra().system().is_antidominant(&g.weights()[0]).unwrap();
            let irreducible = verdict == glider_core::glider::Verdict::Irreducible;
            count += 1;
            if irreducible != anti {
                mismatches += 1;
            }
        }
    }

    // λ₂ = 3(L₂−L₃), z = y_{L₂−L₃}².
    let spec = GliderSpec {
        family: Family::A,
        ranks: vec![1, 2],
        weights: vec![
            weight_spec_coroot(&[rat(-1)]),
            WeightSpec { basis: WeightBasis::L, coords: vec![Q(rat(0)), Q(rat(3)), Q(rat(-3))] },
        ],
        monomials: vec![vec![FactorSpec { root: root(&[0, 1, -1]), exp: 2 }]],
        extra_generators: vec![],
    };
    let g = spec.build().unwrap();
    let verified = g.verify(4).unwrap();
    let witness = g.subfragment_witness(8).unwrap();
    let literal = g.bottom_inside(&root(&[0, 1, -1]), 7, 8).unwrap();
    let witness_ok = matches!(witness, Some(SubfragmentWitness::TopSingularReached { exponent: 7, .. }));
    let ok = mismatches == 0 && count == 50 && witness_ok && !literal && verified.cond1_ok == vec![true];
    (
        ok,
        format!(
            "grid {count} values, {mismatches} mismatches; witness {witness:?}; y^2 v+ in M(s.lambda2): {literal}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for r in 1..=4 {
            let Ok(kind) = AlgebraKind::new(family, r) else { continue };
            let n = kind.matrix_size();
            // Independent count straight from the multiplicity rules.
            let mut want = 0;
            for p in all_partitions(n) {
                let ok = match family {
                    Family::A => true,
                    Family::B | Family::D => p.iter().all(|&x| x % 2 == 1 || p.iter().filter(|&&y| y == x).count() % 2 == 0),
                    Family::C => p.iter().all(|&x| x % 2 == 0 || p.iter().filter(|&&y| y == x).count() % 2 == 0),
                };
                if ok {
                    let very_even = p.iter().all(|&x| x % 2 == 0 && p.iter().filter(|&&y| y == x).count() % 2 == 0);
                    want += if family == Family::D && very_even { 2 } else { 1 };
                }
            }
            let got = orbit_labels(kind).len();
            if got != want {
                bad.push(format!("{}: {got} vs {want}", kind.name()));
            }
        }
    }
    let h = hasse(AlgebraKind::new(Family::A, 2).unwrap());
    let chain: Vec<String> = h.labels.iter().map(|l| l.to_string()).collect();
    let chain_ok = chain == ["[3]", "[2,1]", "[1^3]"] && h.covers == vec![(0, 1), (1, 2)];
    let sl4 = orbit_labels(AlgebraKind::new(Family::A, 3).unwrap()).len();
    (bad.is_empty() && chain_ok && sl4 == 5, format!("count mismatches {bad:?}; sl3 chain {chain:?}; sl4 labels {sl4}"))
}

fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn criterion_8() -> Outcome {
    let r = reachability(Family::A, 1, 3, &EmpiricalConfig::default()).unwrap();
    let want: Vec<OrbitLabel> = ["[3,1]", "[2,1^2]", "[1^4]"].iter().map(|s| OrbitLabel::parse(s).unwrap()).collect();
    let ok = r.equal() && r.predicted == want && r.empirical.exhaustive;
    let show = |v: &[OrbitLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    (ok, format!("predicted {{{}}}, empirical {{{}}}", show(&r.predicted), show(&r.empirical.labels)))
}

fn criterion_9() -> Outcome {
    let wide = EmpiricalConfig {
        coeffs: (-2..=2).map(rat).collect(),
        exhaustive_limit: 1_000_000,
        samples: 100_000,
        seed: 7,
    };
    let show = |v: &[OrbitLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
    let mut ok = true;
    let mut lines = Vec::new();
    for (family, n, m) in [(Family::C, 1, 3), (Family::C, 2, 4), (Family::B, 2, 4), (Family::B, 2, 5), (Family::D, 3, 5)] {
        let r = reachability(family, n, m, &wide).unwrap();
        let mut cell = r.sound();
        if r.empirical.exhaustive {
            cell &= r.equal();
        }
        if (family, n, m) == (Family::B, 2, 5) {
            let forbidden = ["[3,2^2,1^4]", "[7,1^4]"].map(|s| OrbitLabel::parse(s).unwrap());
            let hit: Vec<String> =
                forbidden.iter().filter(|l| r.empirical.labels.contains(l)).map(|l| l.to_string()).collect();
            if !hit.is_empty() {
                lines.push(format!("so11 reaches {}", hit.join(" ")));
                cell = false;
            }
        }
        ok &= cell;
        lines.push(format!(
            "{}{}⊂{}{}: {} {} evaluated, unexpected {{{}}}, missing {{{}}}",
            family,
            n,
            family,
            m,
            if r.empirical.exhaustive { "exhaustive" } else { "sampled" },
            r.empirical.evaluated,
            show(&r.unexpected),
            show(&r.missing)
        ));
    }
    (ok, lines.join("; "))
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (f, r) in [(Family::A, 2), (Family::C, 2), (Family::B, 2)] {
        let alg = ClassicalAlgebra::realize(AlgebraKind::new(f, r).unwrap());
        let gens: Vec<&RationalMatrix> =
            (0..alg.generator_count()).map(|i| alg.generator_matrix(alg.generator_at(i))).collect();
        let mut failures = 0;
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let t1 = bracket(a, &bracket(b, c).unwrap()).unwrap();
                    let t2 = bracket(b, &bracket(c, a).unwrap()).unwrap();
                    let t3 = bracket(c, &bracket(a, b).unwrap()).unwrap();
                    if !(&(&t1 + &t2) + &t3).is_zero() {
                        failures += 1;
                    }
                }
            }
        }
        ok &= failures == 0;
        notes.push(format!("Jacobi {}: {failures} failures", alg.kind().name()));
    }

    let u = Uea::for_kind(AlgebraKind::new(Family::A, 2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let g = u.generator_count();
    let random_monomial = |rng: &mut ChaCha8Rng| {
        let mut e = vec![0u32; g];
        for _ in 0..rng.gen_range(0..=3) {
            e[rng.gen_range(0..g)] += 1;
        }
        u.monomial(PbwMonomial::from_exponents(e))
    };
    let mut assoc_fail = 0;
    for _ in 0..200 {
        let (a, b, c) = (random_monomial(&mut rng), random_monomial(&mut rng), random_monomial(&mut rng));
        let left = u.multiply(&u.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = u.multiply(&a, &u.multiply(&b, &c).unwrap()).unwrap();
        if left != right {
            assoc_fail += 1;
        }
    }
    ok &= assoc_fail == 0;
    notes.push(format!("PBW associativity: {assoc_fail} of 200 fail"));

    let mut conj_fail = 0;
    for t in 0..100 {
        let parts: Vec<usize> = {
            let mut left = 6usize;
            let mut v = Vec::new();
            while left > 0 {
                let k = rng.gen_range(1..=left);
                v.push(k);
                left -= k;
            }
            v
        };
        let p = Partition::new(parts).unwrap();
        let mut x = RationalMatrix::zeros(0, 0);
        for &k in p.parts() {
            x = x.direct_sum(&glider_core::linalg::jordan_block(k));
        }
        // Random unipotent-times-permutation change of basis.
        let n = 6;
        let mut s = RationalMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                s[(i, j)] = rat(rng.gen_range(-3..=3));
            }
        }
        let perm: Vec<usize> = {
            let mut v: Vec<usize> = (0..n).collect();
            v.rotate_left(t % n);
            v
        };
        let s = s.permuted(&perm);
        let conj = s.checked_mul(&x).unwrap().checked_mul(&s.inverse().unwrap()).unwrap();
        if jordan_partition(&conj).unwrap() != p {
            conj_fail += 1;
        }
    }
    ok &= conj_fail == 0;
    notes.push(format!("Jordan conjugation invariance: {conj_fail} of 100 fail"));
    (ok, notes.join("; "))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {k}: {status} ({:.1}s) {detail}", start.elapsed().as_secs_f64());
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
