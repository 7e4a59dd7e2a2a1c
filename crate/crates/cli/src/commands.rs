//! One function per subcommand, each producing a [`Report`].

use std::fs;

use serde_json::{json, Value};
use strucalg::algebra::{verify_automorphism, AdditiveMap, Axiom, AxiomReport};
use strucalg::automorphisms::{
    build_fixing_automorphism, fixes_pointwise, lift_aut_local_f, lift_aut_local_g, lift_aut_triangular, orbit,
    witness, WitnessKind, WitnessParams,
};
use strucalg::bch::{BchGroup, CheckMode, EXHAUSTIVE_BOUND};
use strucalg::constructions::{
    field_algebra, heisenberg, local_sum, matrix_algebra, matrix_lie, null_quadratic, s_of, semidirect_double,
    trivial_mult, triangular, truncated_poly, two_dim_lie, BilinearAction, Construction, ConstructionKind,
    MAXIMAL_IDEAL,
};
use strucalg::derivations::{derivation_matrix, derivation_space, derivations_vanishing_on, is_derivation, scalar_to_delta};
use strucalg::finite::FiniteRing;
use strucalg::invariants::{
    analysis_chain, annihilator_full, center_lie, check_triangular_annihilator, derived_series, lower_central,
    s_analysis_chain,
};
use strucalg::local_rings::{
    asm_criterion, characteristic, cohen_split_check, finite_subfield_search, idempotent_decomposition, interp_field,
    is_local, is_local_finite, mult_representatives, ring2_example, ring2_h, LocalReport,
};
use strucalg::{Algebra, Error, FieldSpec, Matrix, Result, Subspace};

use crate::report::Report;
use crate::{
    parse, usage_error, BchArgs, BchMode, CheckArgs, ChainArgs, Cli, Command, ConstructArgs, DerivationArgs, Expect,
    FileArgs, Kind, LiftArgs, LiftAutArgs, LocalringArgs, OrbitArgs, RingArgs, WitnessArgs, WitnessKindArg,
};

pub fn run(cli: &Cli) -> Report {
    let (name, result) = match &cli.command {
        Command::Construct(a) => ("construct", construct(a)),
        Command::Check(a) => ("check", check(a)),
        Command::Invariants(a) => ("invariants", invariants(a)),
        Command::Chain(a) => ("chain", chain(a)),
        Command::Derivations(a) => ("derivations", derivations(a)),
        Command::LiftAut(a) => ("lift-aut", lift_aut(a)),
        Command::Orbit(a) => ("orbit", orbit_cmd(a)),
        Command::Witness(a) => ("witness", witness_cmd(a, cli.seed)),
        Command::Bch(a) => ("bch", bch(a, cli.seed)),
        Command::Localring(a) => ("localring", localring(a)),
        Command::Decompose(a) => ("decompose", decompose(a)),
    };
    match result {
        Ok(r) => r.finish(),
        Err(Error::Hypothesis { clause, detail }) => {
            let mut r = Report::new(name);
            r.check(&clause, false, detail);
            r.finish()
        }
        Err(e) => usage_error(name, &e),
    }
}

fn field(s: &str) -> Result<FieldSpec> {
    s.parse()
}

fn to_value(c: &Construction) -> Value {
    serde_json::from_str(&c.to_json()).expect("construction serializes to JSON")
}

fn write(path: &str, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Format(format!("{path}: {e}")))
}

fn construct(a: &ConstructArgs) -> Result<Report> {
    let f = field(&a.field)?;
    let from = || -> Result<Construction> {
        let path = a
            .from
            .as_deref()
            .ok_or_else(|| Error::Precondition("--from <file> is required for this kind".into()))?;
        parse::load(path)
    };
    let heis = || -> Result<Algebra> {
        match &a.from {
            Some(path) => Ok(parse::load(path)?.algebra),
            None => Ok(heisenberg(&f, a.n.unwrap_or(1))?.algebra),
        }
    };
    let c = match a.kind {
        Kind::Field => Construction::plain(field_algebra(&f), ConstructionKind::Field),
        Kind::Heisenberg => heisenberg(&f, a.n.unwrap_or(1))?,
        Kind::TwoDimLie => two_dim_lie(&f),
        Kind::TrivialMult => trivial_mult(&f, a.n.unwrap_or(2)),
        Kind::TruncatedPoly => truncated_poly(&f, a.n.unwrap_or(2))?,
        Kind::NullQuadratic => null_quadratic(a.p.unwrap_or(3), a.n.unwrap_or(2))?,
        Kind::MatrixAlgebra => matrix_algebra(&f, a.n.unwrap_or(2))?,
        Kind::MatrixLie => matrix_lie(&f, a.n.unwrap_or(2))?,
        Kind::SemidirectDouble => semidirect_double(&heis()?)?,
        Kind::SOf => {
            let g = match &a.from {
                Some(path) => parse::load(path)?.algebra,
                None => semidirect_double(&heisenberg(&f, a.n.unwrap_or(1))?.algebra)?.algebra,
            };
            s_of(&g)?
        }
        Kind::LocalSum => {
            let m = from()?.algebra;
            local_sum(m.field(), &m)?
        }
        Kind::ScalarTriangular => {
            let n = a.n.unwrap_or(2);
            triangular(&field_algebra(&f), &trivial_mult(&f, n).algebra, &BilinearAction::scalar(&f, n))?
        }
        Kind::Ring2 => ring2_example(&f)?,
    };
    let text = c.to_json();
    if let Some(out) = &a.output {
        write(out, &text)?;
    }
    let mut r = Report::new("construct");
    r.input("kind", c.kind.name()).input("field", &a.field);
    if let Some(n) = a.n {
        r.input("n", n);
    }
    r.info(
        "construction",
        format!("{} of dimension {} over {}", c.kind.name(), c.algebra.dim(), c.algebra.field()),
    );
    r.data(json!({ "algebra": to_value(&c) }));
    r.raw = Some(text);
    Ok(r)
}

fn violation(a: &Algebra, ax: &AxiomReport, kinds: &[Axiom]) -> String {
    ax.violations
        .iter()
        .find(|v| kinds.contains(&v.axiom))
        .map(|v| {
            let names: Vec<&str> = v.basis.iter().map(|&i| a.names()[i].as_str()).collect();
            format!("{:?} fails on ({})", v.axiom, names.join(", "))
        })
        .unwrap_or_else(|| "violated".into())
}

fn default_expectations(c: &Construction) -> Vec<Expect> {
    use ConstructionKind as K;
    match c.kind {
        K::Heisenberg => vec![Expect::Lie, Expect::TwoStep],
        K::TwoDimLie | K::MatrixLie | K::SemidirectDouble | K::SemidirectRho => vec![Expect::Lie],
        K::Field | K::TruncatedPoly | K::LocalSum => vec![Expect::Associative, Expect::Commutative, Expect::Unital],
        K::NullQuadratic => vec![Expect::Associative, Expect::Commutative, Expect::Unital],
        K::SOf => vec![Expect::Associative, Expect::Commutative],
        K::MatrixAlgebra => vec![Expect::Associative, Expect::Unital],
        _ if c.algebra.axioms().anticommutative || c.algebra.axioms().alternating => vec![Expect::Lie],
        _ => Vec::new(),
    }
}

fn check(a: &CheckArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let alg = &c.algebra;
    let ax = alg.axioms();
    let expect = if a.expect.is_empty() { default_expectations(&c) } else { a.expect.clone() };
    let mut r = Report::new("check");
    r.input("file", &a.file).input("kind", c.kind.name());
    r.info("dimension", format!("{} over {}", alg.dim(), alg.field()));
    for e in &expect {
        let (anchor, holds, kinds): (&str, bool, &[Axiom]) = match e {
            Expect::Lie => ("Lie algebra", ax.lie, &[Axiom::Alternating, Axiom::Jacobi]),
            Expect::Associative => ("associative", ax.associative, &[Axiom::Associativity]),
            Expect::Commutative => ("commutative", ax.commutative, &[Axiom::Commutativity]),
            Expect::TwoStep => ("two-step nilpotent", ax.two_step_nilpotent, &[Axiom::TwoStepNilpotency]),
            Expect::Unital => ("unital", ax.unit.is_some(), &[]),
            Expect::Nilpotent => ("nilpotent", ax.nilpotency_index.is_some(), &[]),
        };
        let detail = if holds {
            "holds on all basis tuples".to_string()
        } else if kinds.is_empty() {
            "no such element".to_string()
        } else {
            violation(alg, ax, kinds)
        };
        r.check(anchor, holds, detail);
    }
    if let Some(out) = &a.output {
        write(out, &c.to_json())?;
        r.info("canonical form", format!("written to {out}"));
    }
    r.data(ax);
    Ok(r)
}

fn dims(v: &[Subspace]) -> String {
    v.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(" ⊇ ")
}

fn local_properties(r: &mut Report, rep: &LocalReport) {
    for cl in &rep.clauses {
        r.check(&cl.name, cl.holds, &cl.detail);
    }
    if !rep.residue.is_empty() {
        r.info("residue field", format!("size {}", rep.residue));
    }
}

fn invariants(a: &FileArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let alg = &c.algebra;
    let ax = alg.axioms();
    let mut r = Report::new("invariants");
    r.input("file", &a.file);
    let ann = annihilator_full(alg);
    r.info("annihilator", format!("dimension {}", ann.dim()));
    let mut data = json!({ "annihilator": ann });
    if ax.lie {
        let z = center_lie(alg);
        let lc = lower_central(alg);
        let ds = derived_series(alg);
        r.info("center", format!("dimension {}", z.dim()));
        r.info("lower central series", dims(&lc));
        r.info("derived series", dims(&ds));
        data["center"] = json!(z);
    }
    r.info(
        "nilpotency",
        match ax.nilpotency_index {
            Some(k) => format!("A^{k} = 0"),
            None => "not nilpotent".into(),
        },
    );
    if c.triangular.is_some() {
        let t = check_triangular_annihilator(&c)?;
        r.info(
            "triangular annihilator hypothesis",
            if t.hypothesis_holds { "holds" } else { "fails" },
        );
        r.check(
            "triangular annihilator formula",
            t.consistent(),
            format!("formula dimension {}, brute force dimension {}", t.formula.dim(), t.brute_force.dim()),
        );
        data["triangular"] = json!(t);
    }
    if let (Some(m), Some(_)) = (c.subspace(MAXIMAL_IDEAL), &ax.unit) {
        local_properties(&mut r, &is_local(alg, m));
    }
    r.data(data);
    Ok(r)
}

fn chain(a: &ChainArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let mut r = Report::new("chain");
    r.input("file", &a.file).input("s_case", a.s_case);
    if a.s_case {
        let (s, rep) = s_analysis_chain(&c.algebra)?;
        r.check("S-ring kernel identities", rep.identities_hold(), "S₁, S₂ and ann(S) match their formulas");
        r.check("S-ring images", rep.images_equal_target(), "f₁ and f₂ images equal ((0,0),(0,z(B)))");
        for z in &rep.single_z {
            r.info(
                "single z",
                format!(
                    "{}: centralizer is center {}, bracket is center {}",
                    z.name, z.centralizer_is_center, z.bracket_is_center
                ),
            );
        }
        r.line(format!("S: dim {}", s.algebra.dim()));
        r.line(format!("S1: dim {}", rep.s1.dim()));
        r.line(format!("ann(S): dim {} of {}", rep.ann_s.dim(), rep.s_dim));
        r.line(format!("target: dim {}", rep.target.dim()));
        r.data(&rep);
    } else {
        let rep = analysis_chain(&c)?;
        r.info(
            "chain hypothesis",
            if rep.hypothesis_holds { "holds" } else { "fails" },
        );
        r.check("kernel identities", rep.kernel_identities_hold(), "ker f₁ = Λ₁ and ker f₂ = ann(Λ)");
        r.check("images in module", rep.images_in_module(), "images of f₁, f₂ lie in {0} × M");
        if rep.hypothesis_holds {
            r.check("Λ₁ formula", rep.lambda1_matches_formula(), "Λ₁ = ann_R(ann(M)) × M");
        }
        r.line(format!("Λ1: dim {}", rep.lambda1.dim()));
        r.line(format!("ann(Λ): dim {}", rep.ann_lambda.dim()));
        r.line(format!("module: dim {}", rep.module.dim()));
        r.data(&rep);
    }
    Ok(r)
}

fn derivations(a: &DerivationArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let alg = &c.algebra;
    let mut r = Report::new("derivations");
    r.input("file", &a.file);
    let der = match &a.vanish {
        Some(v) => {
            r.input("vanish", v);
            derivations_vanishing_on(alg, &parse::elements(alg, v)?)?
        }
        None => derivation_space(alg)?,
    };
    let mats: Vec<Matrix> = der.basis_vectors().iter().map(|v| derivation_matrix(alg, v)).collect();
    r.info("dimension", der.dim().to_string());
    r.check(
        "Leibniz rule",
        mats.iter().all(|m| is_derivation(alg, m)),
        format!("{} basis derivations checked", mats.len()),
    );
    for (i, m) in mats.iter().enumerate() {
        r.line(format!("D{}:", i + 1));
        for row in m.to_strings() {
            r.line(format!("  [{}]", row.join(", ")));
        }
    }
    r.data(json!({ "dim": der.dim(), "basis": mats }));
    Ok(r)
}

/// The lifted automorphism and the property checks specific to its mode.
fn lift(c: &Construction, l: &LiftArgs, r: &mut Report) -> Result<AdditiveMap> {
    let f = c.algebra.field();
    let builder = !l.fix.is_empty() || !l.pair.is_empty();
    let modes = [l.hat, l.scalar.is_some(), l.delta.is_some(), l.local_g.is_some(), l.local_f.is_some(), builder];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(Error::Precondition(
            "choose exactly one of --hat, --scalar, --delta, --local-g, --local-f, --fix/--pair".into(),
        ));
    }
    if l.hat {
        let t = c.require_triangular()?;
        if t.ring_dim() != t.module_dim() {
            return Err(Error::Precondition("--hat needs ring and module parts of equal dimension".into()));
        }
        let n = t.ring_dim();
        r.input("mode", "hat");
        return lift_aut_triangular(c, &AdditiveMap::differential(Matrix::zeros(f, n, n), Matrix::identity(f, n)));
    }
    if let Some(x0) = &l.scalar {
        let t = c.require_triangular()?;
        r.input("mode", "scalar").input("x0", x0);
        let x0 = parse::element(&t.module, x0)?;
        return lift_aut_triangular(c, &scalar_to_delta(c, &x0)?);
    }
    if let Some(d) = &l.delta {
        r.input("mode", "delta");
        return lift_aut_triangular(c, &parse::additive_map(f, d)?);
    }
    if let Some(g) = &l.local_g {
        r.input("mode", "local_g");
        return lift_aut_local_g(c, &parse::matrix(f, g)?);
    }
    if let Some(m) = &l.local_f {
        r.input("mode", "local_f");
        return lift_aut_local_f(c, &parse::matrix(f, m)?);
    }
    let alg = &c.algebra;
    r.input("mode", "builder").input("fix", &l.fix).input("pair", &l.pair);
    let fixed = l.fix.iter().map(|e| parse::element(alg, e)).collect::<Result<Vec<_>>>()?;
    let pairs = l
        .pair
        .iter()
        .map(|p| {
            let (b, b2) = p
                .split_once(':')
                .ok_or_else(|| Error::Format(format!("pair {p:?} is not of the form b:b'")))?;
            Ok((parse::element(alg, b)?, parse::element(alg, b2)?))
        })
        .collect::<Result<Vec<_>>>()?;
    match build_fixing_automorphism(c, &fixed, &pairs)? {
        Some(sigma) => {
            for (b, b2) in &pairs {
                r.check(
                    "sends b to b'",
                    sigma.apply_element(b) == *b2,
                    format!("{} ↦ {}", alg.format_element(b), alg.format_element(b2)),
                );
            }
            for e in &fixed {
                r.check("fixes element", sigma.apply_element(e) == *e, alg.format_element(e));
            }
            Ok(sigma)
        }
        None => Err(Error::Hypothesis {
            clause: "consistent data".into(),
            detail: "no automorphism extends the given pairs by the basis procedure".into(),
        }),
    }
}

fn automorphism_properties(c: &Construction, sigma: &AdditiveMap, r: &mut Report) {
    let alg = &c.algebra;
    r.check("automorphism", verify_automorphism(alg, sigma), "σ(xy) = σ(x)σ(y), bijective");
    if let Some(t) = &c.triangular {
        r.check(
            "fixes {0} x M",
            fixes_pointwise(sigma, &t.module_subspace(&t.module.full_space())),
            "module part fixed pointwise",
        );
    }
    if let Some(u) = alg.find_unit() {
        r.check("fixes 1", sigma.apply_element(&u) == u, alg.format_element(&u));
    }
}

fn lift_aut(a: &LiftAutArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let mut r = Report::new("lift-aut");
    r.input("file", &a.file);
    let sigma = lift(&c, &a.lift, &mut r)?;
    automorphism_properties(&c, &sigma, &mut r);
    for (i, row) in sigma.linear_part().to_strings().iter().enumerate() {
        r.line(format!("L[{i}] = [{}]", row.join(", ")));
    }
    if let Some(d) = sigma.derivative_part() {
        for (i, row) in d.to_strings().iter().enumerate() {
            r.line(format!("D[{i}] = [{}]", row.join(", ")));
        }
    }
    r.data(json!({ "sigma": sigma }));
    Ok(r)
}

fn modulo(c: &Construction, s: &str) -> Result<Subspace> {
    let alg = &c.algebra;
    match s {
        "annihilator" => Ok(annihilator_full(alg)),
        "zero" => Ok(Subspace::zero(alg.field(), alg.dim())),
        other => parse::subspace(c, other),
    }
}

fn orbit_cmd(a: &OrbitArgs) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let mut r = Report::new("orbit");
    r.input("file", &a.file).input("base", &a.base).input("modulo", &a.modulo).input("n", a.n);
    let sigma = lift(&c, &a.lift, &mut r)?;
    let base = parse::element(&c.algebra, &a.base)?;
    let m = modulo(&c, &a.modulo)?;
    let orb = orbit(&c.algebra, &sigma, &base, &m, a.n)?;
    r.info(
        "orbit",
        match orb.period {
            Some(k) => format!("{} distinct cosets, period {k}", orb.distinct_cosets),
            None => format!("{} distinct cosets, no return within N = {}", orb.distinct_cosets, a.n),
        },
    );
    if let Some(k) = a.expect_distinct {
        r.check("distinct cosets", orb.distinct_cosets == k, format!("expected {k}"));
    }
    if let Some(p) = a.expect_period {
        r.check("period", orb.period == Some(p), format!("expected {p}"));
    }
    r.data(json!({ "sigma": sigma, "orbit": orb }));
    Ok(r)
}

fn witness_cmd(a: &WitnessArgs, seed: u64) -> Result<Report> {
    let kind = match a.kind {
        WitnessKindArg::Vector => WitnessKind::Vector,
        WitnessKindArg::Lie => WitnessKind::Lie,
        WitnessKindArg::SRing => WitnessKind::SRing,
    };
    let params = WitnessParams {
        n: a.n,
        dim: a.dim,
        heisenberg_n: a.heisenberg_n,
        seed,
        fixed: Vec::new(),
    };
    let rep = witness(kind, a.characteristic, &params)?;
    let mut r = Report::new("witness");
    r.input("kind", kind.name()).input("char", a.characteristic).input("n", a.n).input("seed", seed);
    r.info("field", &rep.field);
    for cl in &rep.claims {
        if cl.name == "claim 2" && rep.characteristic != 0 {
            r.info(&cl.name, &cl.detail);
        } else {
            r.check(&cl.name, cl.holds, &cl.detail);
        }
    }
    r.check("expected outcome", rep.holds, &rep.expected);
    r.data(&rep);
    Ok(r)
}

fn bch(a: &BchArgs, seed: u64) -> Result<Report> {
    let c = parse::load(&a.file)?;
    let g = BchGroup::new(&c.algebra)?;
    let mode = match a.check {
        BchMode::Exhaustive => CheckMode::Exhaustive,
        BchMode::Random => CheckMode::Random {
            samples: a.samples,
            seed,
        },
    };
    let rep = g.check_group(mode)?;
    let mut r = Report::new("bch");
    r.input("file", &a.file).input("check", rep.mode.as_str()).input("seed", seed);
    let triples = format!("{} triples", rep.triples_checked);
    r.check(
        "associativity",
        rep.associative,
        rep.counterexample.clone().map_or(triples.clone(), |t| format!("fails on {t}")),
    );
    r.check("identity", rep.identity, "x * 0 = x = 0 * x");
    r.check("inverses", rep.inverses, "x * (-x) = 0");
    r.check("powers are sums", rep.powers_equal_sums, "x * ... * x = x + ... + x up to 10 factors");
    r.check("commutator is bracket", rep.commutator_is_bracket, "x * y * x⁻¹ * y⁻¹ = [x, y]");
    let recovered = g.recover_lie()?;
    r.check("recovered Lie algebra", recovered == c.algebra, "structure constants from group commutators");
    if g.order().is_some_and(|n| n <= EXHAUSTIVE_BOUND) {
        r.check("center", g.center_matches()?, "center of the group equals the center of the Lie algebra");
    }
    r.data(&rep);
    Ok(r)
}

fn finite_ring(a: &RingArgs) -> Result<(FiniteRing, Option<Construction>)> {
    match (&a.file, a.cyclic) {
        (_, Some(n)) => Ok((FiniteRing::cyclic(n)?, None)),
        (Some(path), None) => {
            let c = parse::load(path)?;
            Ok((FiniteRing::from_algebra(&c.algebra)?, Some(c)))
        }
        (None, None) => Err(Error::Precondition("a file or --cyclic is required".into())),
    }
}

fn localring(a: &LocalringArgs) -> Result<Report> {
    let mut r = Report::new("localring");
    if let Some(n) = a.ring.cyclic {
        r.input("cyclic", n);
        let ring = FiniteRing::cyclic(n)?;
        local_properties(&mut r, &is_local_finite(&ring)?);
        if let Some(ch) = ring.characteristic() {
            r.info("characteristic", ch.to_string());
        }
        teichmuller(&ring, a.teichmuller, &mut r)?;
        if a.cohen.is_some() {
            let s = finite_subfield_search(&ring)?;
            r.info(
                "subfield search",
                format!("{} candidate subrings, {} pass", s.candidates, s.passing.len()),
            );
        }
        return Ok(r);
    }
    let path = a.ring.file.as_deref().expect("clap requires a file");
    let c = parse::load(path)?;
    let alg = &c.algebra;
    r.input("file", path);
    let m = match &a.maximal_ideal {
        Some(s) => {
            r.input("maximal_ideal", s);
            parse::subspace(&c, s)?
        }
        None => c
            .subspace(MAXIMAL_IDEAL)
            .cloned()
            .ok_or_else(|| Error::Precondition("no maximal_ideal tag; pass --maximal-ideal".into()))?,
    };
    local_properties(&mut r, &is_local(alg, &m));
    if let Ok(ch) = characteristic(alg) {
        r.info("characteristic", ch.to_string());
    }
    if let Ok(asm) = asm_criterion(&c) {
        r.info(
            "m = ann(m)",
            format!(
                "{}: dim m {}, dim ann(m) {}, codim of m² + ann(m) {}",
                if asm.criterion_holds { "holds" } else { "fails" },
                asm.m_dim,
                asm.ann_dim,
                asm.codim
            ),
        );
    }
    if a.teichmuller.is_some() {
        teichmuller(&FiniteRing::from_algebra(alg)?, a.teichmuller, &mut r)?;
    }
    if let Some(k) = &a.cohen {
        r.input("cohen", k);
        let rep = cohen_split_check(&c, &parse::subspace(&c, k)?)?;
        for cl in &rep.clauses {
            r.check(&cl.name, cl.holds, &cl.detail);
        }
        if let Some(m) = rep.retag_matches {
            r.check("retagged product", m, "Λ(k, m) multiplication equals R's");
        }
    }
    if let Some(fs) = &a.interp {
        r.input("interp", fs);
        let f = field(fs)?;
        let h = ring2_h(&c)?;
        let rep = interp_field(&c, &h, &f)?;
        r.check(
            "well defined",
            rep.well_defined,
            format!("{} preimage pairs", rep.preimage_pairs_checked),
        );
        for cl in &rep.axioms {
            r.check(&cl.name, cl.holds, &cl.detail);
        }
        r.check(
            "cyclic multiplicative group",
            rep.cyclic_generator.is_some(),
            format!("order {}", rep.multiplicative_order),
        );
        r.check("isomorphic to F", rep.isomorphic_to_field, format!("αx² ↦ α onto {f}"));
        r.data(&rep);
    }
    Ok(r)
}

fn teichmuller(ring: &FiniteRing, n: Option<u32>, r: &mut Report) -> Result<()> {
    let Some(n) = n else { return Ok(()) };
    r.input("teichmuller", n);
    let t = mult_representatives(ring, n)?;
    r.info("representatives", format!("{{{}}}", t.display.join(", ")));
    r.check("unique per class", t.unique, "each residue class meets X once");
    r.check("multiplicatively closed", t.closed, "X·X ⊆ X");
    r.check("powers at every level", t.powers_at_every_level, "X consists of p^k-th powers");
    r.check("multiplicative", t.multiplicative, "rep(a)rep(b) = rep(ab)");
    for rep in &t.representatives {
        r.line(format!("{} ↦ {}", rep.class, rep.element));
    }
    r.data(&t);
    Ok(())
}

fn decompose(a: &RingArgs) -> Result<Report> {
    let (ring, _) = finite_ring(a)?;
    let d = idempotent_decomposition(&ring)?;
    let mut r = Report::new("decompose");
    match (&a.file, a.cyclic) {
        (_, Some(n)) => r.input("cyclic", n),
        (Some(f), _) => r.input("file", f),
        _ => &mut r,
    };
    r.info("idempotents", d.idempotents.to_string());
    for f in &d.factors {
        r.info(
            "factor",
            format!(
                "u = {}: {} elements{}",
                f.unit_display,
                f.size,
                if f.is_field {
                    ", field"
                } else if f.is_local {
                    ", local"
                } else {
                    ""
                }
            ),
        );
    }
    r.check("orthogonal", d.orthogonal, "uᵢuⱼ = 0 for i ≠ j");
    r.check("sum is one", d.sum_is_one, "Σ uᵢ = 1");
    r.check("reassembly bijective", d.reassembly_bijective, "a ↦ (a·uᵢ) is a bijection onto the product");
    r.check("reassembly multiplicative", d.reassembly_multiplicative, "a ↦ (a·uᵢ) is a ring map");
    r.data(&d);
    Ok(r)
}
