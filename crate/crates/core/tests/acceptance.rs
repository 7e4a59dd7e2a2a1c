//! Acceptance suite: every criterion runs against its time budget and prints
//! one PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strucalg::automorphisms::{
    build_fixing_automorphism, fixes_pointwise, lift_aut_local_f, lift_aut_local_g, lift_aut_triangular,
    moving_family, witness, WitnessKind, WitnessParams,
};
use strucalg::bch::{BchGroup, CheckMode};
use strucalg::constructions::{
    field_algebra, heisenberg, matrix_lie, null_quadratic, s_of, semidirect_double, triangular, trivial_mult,
    truncated_poly, BilinearAction, Construction,
};
use strucalg::derivations::{hat_lift, scalar_to_delta, HatLift};
use strucalg::finite::FiniteRing;
use strucalg::invariants::{analysis_chain, annihilator_full, check_triangular_annihilator, s_analysis_chain};
use strucalg::local_rings::{
    asm_criterion, idempotent_decomposition, interp_field, mult_representatives, ring2_example, ring2_h,
};
use strucalg::{verify_automorphism, AdditiveMap, Element, Error, FieldSpec, Matrix};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: strucalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn clause_of<T: std::fmt::Debug>(r: strucalg::Result<T>) -> Option<String> {
    match r {
        Err(Error::Hypothesis { clause, .. }) => Some(clause),
        _ => None,
    }
}

fn scalar_triangular(f: &FieldSpec, n: usize) -> Result<Construction, String> {
    ok(triangular(&field_algebra(f), &trivial_mult(f, n).algebra, &BilinearAction::scalar(f, n)))
}

fn random_element(a: &strucalg::Algebra, rng: &mut ChaCha8Rng) -> Element {
    let f = a.field();
    Element::new((0..a.dim()).map(|_| f.random(rng)).collect())
}

fn lifted_automorphisms() -> Outcome {
    let f = FieldSpec::rational_functions_q();
    let lam = scalar_triangular(&f, 3)?;
    let t = ok(lam.require_triangular())?;
    let x0 = Element::new(vec![f.one(), f.zero(), f.zero()]);
    let sigma = ok(lift_aut_triangular(&lam, &ok(scalar_to_delta(&lam, &x0))?))?;
    let module = t.module_subspace(&t.module.full_space());
    ensure(verify_automorphism(&lam.algebra, &sigma), "Λ(Q(t), V): not an automorphism")?;
    ensure(!sigma.is_identity(), "Λ(Q(t), V): lift is the identity")?;
    ensure(fixes_pointwise(&sigma, &module), "Λ(Q(t), V): moves {0} x M")?;
    let one = lam.algebra.find_unit().ok_or("Λ(Q(t), V) has no unit")?;
    ensure(sigma.apply_element(&one) == one, "Λ(Q(t), V): moves 1")?;

    let g = ok(semidirect_double(&ok(heisenberg(&f, 1))?.algebra))?;
    let n = ok(g.require_triangular())?.ring_dim();
    let delta = AdditiveMap::differential(Matrix::zeros(&f, n, n), Matrix::identity(&f, n));
    let sigma = ok(lift_aut_triangular(&g, &delta))?;
    let t = ok(g.require_triangular())?;
    ensure(verify_automorphism(&g.algebra, &sigma), "h3 ⋉ h3⁺: not an automorphism")?;
    ensure(!sigma.is_identity(), "h3 ⋉ h3⁺: lift is the identity")?;
    ensure(fixes_pointwise(&sigma, &t.module_subspace(&t.module.full_space())), "h3 ⋉ h3⁺: moves {0} x M")?;
    ensure(g.algebra.find_unit().is_none(), "h3 ⋉ h3⁺ unexpectedly unital")?;
    Ok("both lifts are automorphisms fixing the module; Λ(Q(t), V) lift fixes 1".into())
}

fn triangular_annihilators() -> Outcome {
    let q = FieldSpec::rationals();
    let gf3 = FieldSpec::prime(3).unwrap();
    let s = ok(s_of(&ok(semidirect_double(&ok(heisenberg(&gf3, 1))?.algebra))?.algebra))?;
    let cases = [
        ("Λ(Q, V)", scalar_triangular(&q, 3)?),
        ("Λ(h3, h3⁺)", ok(semidirect_double(&ok(heisenberg(&q, 1))?.algebra))?),
        (
            "Λ(GF(3), S(h3 ⋉ h3⁺))",
            ok(triangular(&field_algebra(&gf3), &s.algebra, &BilinearAction::scalar(&gf3, s.algebra.dim())))?,
        ),
    ];
    let mut notes = Vec::new();
    for (name, c) in cases {
        let r = ok(check_triangular_annihilator(&c))?;
        ensure(r.brute_force == annihilator_full(&c.algebra), format!("{name}: brute force side is wrong"))?;
        if r.hypothesis_holds {
            ensure(r.formula == r.brute_force, format!("{name}: formula and brute force differ"))?;
        }
        notes.push(format!(
            "{name} hypothesis {} dim {}",
            if r.hypothesis_holds { "holds" } else { "fails" },
            r.brute_force.dim()
        ));
    }
    Ok(notes.join("; "))
}

fn hat_leibniz() -> Outcome {
    let f = FieldSpec::rational_functions_q();
    let gl = ok(matrix_lie(&f, 4))?;
    let a = &gl.algebra;
    let lift = |x: &Element| -> Result<Element, String> {
        match ok(hat_lift(&gl, x))? {
            HatLift::InAlgebra { element } => Ok(element),
            HatLift::Matrix { .. } => Err("gl4 lift left the algebra".into()),
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..500 {
        let (x, y) = (random_element(a, &mut rng), random_element(a, &mut rng));
        let lhs = lift(&a.mul(&x, &y))?;
        let rhs = a.add(&a.mul(&lift(&x)?, &y), &a.mul(&x, &lift(&y)?));
        ensure(lhs == rhs, format!("Leibniz fails on random pair {i}"))?;
    }
    let h = ok(heisenberg(&f, 1))?;
    let t = f.generator().unwrap();
    for b in h.algebra.basis_elements() {
        for k in 0..4u64 {
            let tb = h.algebra.scale(&f.pow(&t, k), &b);
            let expected = h.algebra.scale(&f.derive(&f.pow(&t, k)), &b);
            match ok(hat_lift(&h, &tb))? {
                HatLift::InAlgebra { element } => ensure(element == expected, "δ̂(t^k b) ≠ k t^(k-1) b")?,
                HatLift::Matrix { .. } => return Err("h3 lift left the algebra".into()),
            }
        }
    }
    Ok("500 random gl4(Q(t)) pairs; δ̂ on t^k·basis of h3 stays in h3".into())
}

fn witnesses() -> Outcome {
    let params = WitnessParams::default();
    let mut notes = Vec::new();
    let v0 = ok(witness(WitnessKind::Vector, 0, &params))?;
    ensure(v0.holds && v0.distinct_cosets >= 51, format!("vector char 0: {} cosets", v0.distinct_cosets))?;
    notes.push(format!("vector char 0: {} cosets", v0.distinct_cosets));
    let l0 = ok(witness(WitnessKind::Lie, 0, &params))?;
    for name in ["claim 1", "claim 2"] {
        let c = l0.claims.iter().find(|c| c.name == name).ok_or(format!("lie: no {name}"))?;
        ensure(c.holds, format!("lie char 0 {name}: {}", c.detail))?;
    }
    ensure(l0.holds && l0.distinct_cosets >= 51, "lie char 0 orbit too short")?;
    notes.push(format!("lie char 0: claims hold, {} cosets", l0.distinct_cosets));
    for p in [3, 5] {
        for kind in [WitnessKind::Vector, WitnessKind::Lie, WitnessKind::SRing] {
            let r = ok(witness(kind, p, &params))?;
            ensure(
                r.holds && r.period == Some(p as usize),
                format!("{} char {p}: period {:?}", kind.name(), r.period),
            )?;
        }
        notes.push(format!("char {p}: period {p} for all kinds"));
    }
    Ok(notes.join("; "))
}

fn bch_groups() -> Outcome {
    let mut notes = Vec::new();
    for (p, triples) in [(3u64, 19_683u64), (5, 1_953_125)] {
        let f = FieldSpec::prime(p).unwrap();
        let h = ok(heisenberg(&f, 1))?.algebra;
        let g = ok(BchGroup::new(&h))?;
        let r = ok(g.check_group(CheckMode::Exhaustive))?;
        ensure(r.holds(), format!("h3(GF({p})) group axioms: {:?}", r.counterexample))?;
        ensure(r.triples_checked == triples, format!("h3(GF({p})): {} triples", r.triples_checked))?;
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let basis = h.basis_elements();
        let pairs = basis
            .iter()
            .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
            .chain((0..500).map(|_| (random_element(&h, &mut rng), random_element(&h, &mut rng))));
        for (x, y) in pairs {
            ensure(g.group_commutator(&x, &y) == h.mul(&x, &y), "group commutator ≠ bracket")?;
        }
        ensure(ok(g.recover_lie())? == h, format!("h3(GF({p})) not recovered"))?;
        notes.push(format!("h3(GF({p})) {} triples", r.triples_checked));
    }
    let f = FieldSpec::prime(3).unwrap();
    let sd = ok(semidirect_double(&ok(heisenberg(&f, 1))?.algebra))?;
    // δ(X) = Z⁺, zero on Y and Z.
    let mut d = Matrix::zeros(&f, 3, 3);
    d.set(2, 0, f.one());
    let sigma = ok(lift_aut_triangular(&sd, &AdditiveMap::linear(d)))?;
    ensure(verify_automorphism(&sd.algebra, &sigma) && !sigma.is_identity(), "lifted σ is not a nontrivial automorphism")?;
    let g = ok(BchGroup::new(&sd.algebra))?;
    ensure(g.preserves_star(&sigma, 500, 0), "lifted σ does not preserve the group law")?;
    notes.push("lifted σ on h3 ⋉ h3⁺ preserves *".into());
    Ok(notes.join("; "))
}

fn representatives() -> Outcome {
    let z9 = ok(FiniteRing::cyclic(9))?;
    let t = ok(mult_representatives(&z9, 2))?;
    ensure(t.display == ["0", "1", "8"], format!("Z/9 representatives {:?}", t.display))?;
    ensure(t.holds(), "Z/9 representatives fail a property")?;
    let gf9 = FieldSpec::galois(3, 2).unwrap();
    let dual = ok(FiniteRing::from_algebra(&ok(truncated_poly(&gf9, 2))?.algebra))?;
    let cases = [("Z/27", ok(FiniteRing::cyclic(27))?, 3), ("Z/25", ok(FiniteRing::cyclic(25))?, 2), ("GF(9)[x]/(x^2)", dual, 2)];
    let mut notes = vec!["Z/9 {0, 1, 8}".to_string()];
    for (name, r, n) in cases {
        let t = ok(mult_representatives(&r, n))?;
        ensure(t.unique && t.multiplicative && t.closed, format!("{name}: {t:?}"))?;
        notes.push(format!("{name} {} representatives", t.set.len()));
    }
    Ok(notes.join("; "))
}

fn decompositions() -> Outcome {
    let z6 = ok(idempotent_decomposition(&ok(FiniteRing::cyclic(6))?))?;
    let units: BTreeSet<&str> = z6.factors.iter().map(|f| f.unit_display.as_str()).collect();
    ensure(units == BTreeSet::from(["3", "4"]), format!("Z/6 idempotents {units:?}"))?;
    let sizes: BTreeSet<usize> = z6.factors.iter().map(|f| f.size).collect();
    ensure(sizes == BTreeSet::from([2, 3]), format!("Z/6 sizes {sizes:?}"))?;
    ensure(z6.holds(), "Z/6 reassembly fails")?;
    let z12 = ok(idempotent_decomposition(&ok(FiniteRing::cyclic(12))?))?;
    let sizes: BTreeSet<usize> = z12.factors.iter().map(|f| f.size).collect();
    ensure(sizes == BTreeSet::from([3, 4]), format!("Z/12 sizes {sizes:?}"))?;
    ensure(z12.holds() && z12.reassembly_bijective, "Z/12 reassembly fails")?;
    Ok("Z/6 = 3·Z/6 x 4·Z/6 (2, 3); Z/12 sizes 4, 3; reassembly bijective".into())
}

fn local_automorphisms() -> Outcome {
    let gf3 = FieldSpec::prime(3).unwrap();
    let c = ok(truncated_poly(&gf3, 3))?;
    let a = &c.algebra;
    let x = a.basis(1);
    let target = a.element_from_ints(&[0, 1, 1]);
    let by_g = ok(lift_aut_local_g(&c, &Matrix::from_ints(&gf3, &[&[1, 0], &[1, 1]])))?;
    let by_f = ok(lift_aut_local_f(&c, &Matrix::from_ints(&gf3, &[&[1]])))?;
    let by_builder = ok(build_fixing_automorphism(&c, &[], &[(x.clone(), target.clone())]))?
        .ok_or("builder found no automorphism")?;
    for (name, s) in [("g", &by_g), ("f", &by_f), ("builder", &by_builder)] {
        ensure(s.apply_element(&x) == target, format!("{name}: x not sent to x + x^2"))?;
        ensure(verify_automorphism(a, s), format!("{name}: not an automorphism"))?;
    }
    ensure(by_g == by_f && by_f == by_builder, "constructions disagree")?;

    let family = ok(moving_family(&c, &x))?;
    let sigmas: BTreeSet<String> = family.iter().map(|m| format!("{:?}", m.sigma)).collect();
    let shifts: BTreeSet<Vec<u64>> = family.iter().map(|m| common::residues(&gf3, m.shift.coords())).collect();
    let expected: BTreeSet<Vec<u64>> = [[0, 0, 0], [0, 0, 1], [0, 0, 2]].iter().map(|v| v.to_vec()).collect();
    ensure(family.len() == 3 && sigmas.len() == 3, "moving family is not 3 distinct automorphisms")?;
    ensure(shifts == expected, format!("shifts {shifts:?} are not ann(m)"))?;
    for m in &family {
        ensure(verify_automorphism(a, &m.sigma), "moving family member is not an automorphism")?;
        ensure(m.sigma.apply_element(&x) == a.add(&x, &m.shift), "member does not move x by its shift")?;
    }

    let negatives = [
        (
            "g is the identity on m^2",
            clause_of(lift_aut_local_g(&c, &Matrix::from_ints(&gf3, &[&[1, 0], &[0, 2]]))),
        ),
        (
            "g - id maps m into ann(m)",
            clause_of(lift_aut_local_g(&c, &Matrix::from_ints(&gf3, &[&[2, 0], &[0, 1]]))),
        ),
        ("b' - b in ann(m)", clause_of(build_fixing_automorphism(&c, &[], &[(x.clone(), a.basis(0))]))),
        ("a outside m^2 + ann(m)", clause_of(moving_family(&c, &a.basis(2)))),
    ];
    for (expected, got) in negatives {
        ensure(got.as_deref() == Some(expected), format!("expected rejection by {expected:?}, got {got:?}"))?;
    }
    Ok("g, f and builder agree on x ↦ x + x^2; 3 moving automorphisms; 4 rejections named".into())
}

fn interpretable_field() -> Outcome {
    let gf9 = FieldSpec::galois(3, 2).unwrap();
    let c = ok(ring2_example(&gf9))?;
    let h = ok(ring2_h(&c))?;
    let r = ok(interp_field(&c, &h, &gf9))?;
    ensure(r.well_defined, "⊙ is not well defined")?;
    ensure(r.axioms.iter().all(|a| a.holds), "⊙ fails a field axiom")?;
    ensure(r.multiplicative_order == 8 && r.cyclic_generator.is_some(), "multiplicative group is not cyclic of order 8")?;
    ensure(r.isomorphic_to_field && r.holds(), "(ann(m), +, ⊙) is not GF(9)")?;
    let asm = ok(asm_criterion(&c))?;
    ensure(!asm.criterion_holds && asm.ann_dim < asm.m_dim, "ring2: ann(m) should be a proper subspace of m")?;
    let nq = ok(asm_criterion(&ok(null_quadratic(3, 4))?))?;
    ensure(nq.criterion_holds, "null_quadratic(3, 4): m ≠ ann(m)")?;
    Ok(format!(
        "{} preimage pairs; field of order {}; ring2 ann(m) dim {} < {}; null_quadratic m = ann(m)",
        r.preimage_pairs_checked,
        r.size,
        asm.ann_dim,
        asm.m_dim
    ))
}

fn analysis_chains() -> Outcome {
    let lam = scalar_triangular(&FieldSpec::rationals(), 3)?;
    let r = ok(analysis_chain(&lam))?;
    ensure(r.kernel_identities_hold(), "Λ(Q, V): kernel identities fail")?;
    ensure(r.images_in_module(), "Λ(Q, V): images leave {0} x M")?;
    ensure(!r.hypothesis_holds || r.lambda1_matches_formula(), "Λ(Q, V): Λ₁ formula fails")?;
    let gf3 = FieldSpec::prime(3).unwrap();
    let (_, s) = ok(s_analysis_chain(&ok(heisenberg(&gf3, 1))?.algebra))?;
    ensure(s.identities_hold(), "S-case: identities fail")?;
    ensure(s.images_equal_target(), "S-case: images differ from the target")?;
    ensure(s.ann_s.dim() == 4 && s.s_dim == 12, format!("S-case dims {}/{}", s.ann_s.dim(), s.s_dim))?;
    Ok(format!("Λ(Q, V) chain dims {}/{}; S-case ann(S) 4/12", r.lambda1.dim(), r.ann_lambda.dim()))
}

fn oracle_equivalence() -> Outcome {
    let corpus = common::small_corpus();
    let mut failures = Vec::new();
    for (name, c) in &corpus {
        failures.extend(common::oracle_mismatches(c).into_iter().map(|m| format!("{name}: {m}")));
    }
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{} algebras agree with brute force", corpus.len()))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("lifted automorphisms of triangular rings", 5, lifted_automorphisms),
        ("triangular annihilator formula", 10, triangular_annihilators),
        ("hat derivation Leibniz rule", 10, hat_leibniz),
        ("orbit witnesses", 15, witnesses),
        ("BCH groups", 60, bch_groups),
        ("multiplicative representatives", 10, representatives),
        ("idempotent decomposition", 5, decompositions),
        ("local ring automorphisms", 5, local_automorphisms),
        ("field on ann(m)", 20, interpretable_field),
        ("analysis chains", 10, analysis_chains),
        ("oracle equivalence", 60, oracle_equivalence),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "{status} {:>2} {name} ({:.2} s of {budget} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
