//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured numbers. Exits nonzero if any criterion fails.

mod oracle;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use chaincert::certificate::{parse_extension, parse_lift, CertificateFile, ExtensionDoc, LiftDoc};
use chaincert::commands::{solve, verify_certificate, Kind, Options};
use chaincert::format::{to_pretty, Problem, ProblemFile};
use chaincert::generate::instance;
use chaincert::Family;
use chaincert_core::chains::is_close;
use chaincert_core::coefficients::int;
use chaincert_core::constructors::{
    build_homotopy, extend_realization, ConstructError, ExtensionCertificate, HomotopyProblem, RealizationProblem,
};
use chaincert_core::homology::{fill_cycle, homology, induced_map, is_trivial_induced};
use chaincert_core::uvn::{check_approx_lcn, check_uvn_map};
use chaincert_core::{
    Chain, ChainHomotopy, ChainMorphism, FiltrationTower, Ring, Scalar, Simplex, SimplicialComplex, SimplicialMap,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criterion 1 wall-clock budget.
const HOMOLOGY_BUDGET: Duration = Duration::from_secs(5);
/// Criterion 3 wall-clock budget.
const REALIZATION_BUDGET: Duration = Duration::from_secs(60);
const LAW_INSTANCES: usize = 1000;
const REALIZATION_INSTANCES: u64 = 100;
const OBSTRUCTION_INSTANCES: u64 = 40;
const PRISM_INSTANCES: u64 = 100;
const UVN_INSTANCES: usize = 50;
/// Seeds tried while collecting UV^n instances.
const UVN_SEED_LIMIT: u64 = 2000;
const PAIR_INSTANCES: usize = 500;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let name = p.file_stem().expect("stem").to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable"))
        })
        .collect();
    files.sort();
    files
}

fn zmod(m: i64) -> Ring {
    Ring::integers_mod(m).expect("modulus")
}

fn opts() -> Options {
    Options { strict_vertices: true, ..Options::default() }
}

fn scalar_i128(x: &Scalar) -> (i128, i128) {
    (x.numer().to_string().parse().expect("small"), x.denom().to_string().parse().expect("small"))
}

// ---------------------------------------------------------------- criterion 1

const SURFACES: [&str; 5] = ["circle", "sphere", "torus", "projective_plane", "klein_bottle"];

/// Expected integral reduced homology, `(free rank, torsion)` per degree.
fn known_integral(name: &str) -> Vec<(usize, Vec<i128>)> {
    match name {
        "circle" => vec![(0, vec![]), (1, vec![])],
        "sphere" => vec![(0, vec![]), (0, vec![]), (1, vec![])],
        "torus" => vec![(0, vec![]), (2, vec![]), (1, vec![])],
        "projective_plane" => vec![(0, vec![]), (0, vec![2]), (0, vec![])],
        "klein_bottle" => vec![(0, vec![]), (1, vec![2]), (0, vec![])],
        _ => unreachable!(),
    }
}

fn facets_of(doc: &Value, name: &str) -> Vec<Vec<String>> {
    doc["complexes"][name]["simplices"]
        .as_array()
        .expect("simplices")
        .iter()
        .map(|s| s.as_array().expect("simplex").iter().map(|v| v.as_str().expect("name").to_string()).collect())
        .collect()
}

fn criterion_homology() -> Verdict {
    let start = Instant::now();
    let mut groups = 0;
    for name in SURFACES {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let cells = oracle::closure(&facets_of(&doc, name));
        let p = Problem::from_json(&text).map_err(|e| e.to_string())?;
        let k = &p.complexes[name];
        let top = cells.len() - 1;
        ensure(k.dim() == Some(top), || format!("{name}: dimension mismatch"))?;
        let expected = known_integral(name);
        for d in 0..=top {
            let (free, torsion) = oracle::homology_z(&cells, d);
            ensure((free, torsion.clone()) == expected[d], || format!("{name}: oracle disagrees with the known H_{d}"))?;
            let h = homology(k, d, &Ring::Integers);
            let got: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
            let want: Vec<String> = torsion.iter().map(ToString::to_string).collect();
            ensure(h.free_rank == free && got == want, || format!("{name} over Z: H_{d} = {h}, oracle ({free}, {want:?})"))?;
            let h2 = homology(k, d, &zmod(2));
            let want2 = oracle::homology_mod(&cells, d, 2);
            ensure(h2.free_rank == want2 && h2.torsion.is_empty(), || format!("{name} over Z/2: H_{d} = {h2}, oracle {want2}"))?;
            let hq = homology(k, d, &Ring::Rationals);
            let wantq = oracle::homology_q(&cells, d);
            ensure(hq.free_rank == wantq && hq.torsion.is_empty(), || format!("{name} over Q: H_{d} = {hq}, oracle {wantq}"))?;
            groups += 3;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < HOMOLOGY_BUDGET, || format!("took {elapsed:?}, budget {HOMOLOGY_BUDGET:?}"))?;
    Ok(format!("{groups} groups agree with the oracle in {} ms", elapsed.as_millis()))
}

// ---------------------------------------------------------------- criterion 2

fn random_facets(rng: &mut ChaCha8Rng, max_vertices: usize, max_dim: usize) -> Vec<Vec<String>> {
    let n = rng.random_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut facets: Vec<Vec<String>> = names.iter().map(|v| vec![v.clone()]).collect();
    for _ in 0..rng.random_range(1..=5) {
        let size = rng.random_range(1..=(max_dim + 1).min(n));
        let mut f: Vec<String> = names.choose_multiple(rng, size).cloned().collect();
        f.sort();
        facets.push(f);
    }
    facets
}

fn random_ring(rng: &mut ChaCha8Rng, i: usize) -> Ring {
    match i % 3 {
        0 => Ring::Integers,
        1 => zmod(rng.random_range(2..=9)),
        _ => Ring::Rationals,
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, ring: &Ring) -> Scalar {
    let a = int(rng.random_range(-5..=5));
    match ring {
        Ring::Rationals => a / int(rng.random_range(1..=4)),
        _ => ring.reduce(a),
    }
}

fn random_chain(rng: &mut ChaCha8Rng, k: &SimplicialComplex, d: usize, ring: &Ring) -> Chain {
    let mut c = Chain::zero(d);
    for s in k.simplices(d) {
        let x = random_scalar(rng, ring);
        c.add_term(s.clone(), &x, ring);
    }
    c
}

/// `sum_i (-1)^i value(face_i)`.
fn signed_faces(s: &Simplex, value: impl Fn(&Simplex) -> Chain, dim: usize, ring: &Ring) -> Chain {
    let mut acc = Chain::zero(dim);
    for (i, f) in s.boundary_faces().iter().enumerate() {
        let v = value(f);
        acc = if i % 2 == 0 { acc.add(&v, ring) } else { acc.sub(&v, ring) };
    }
    acc
}

fn laws_hold(phi: &ChainMorphism, ring: &Ring) -> Result<(), String> {
    for s in phi.source.all_simplices().filter(|s| s.dim() <= phi.degree_cap) {
        let v = &phi.assignment[s];
        if s.dim() == 0 {
            let e = v.augmentation(ring).map_err(|e| e.to_string())?;
            ensure(ring.is_one(&e), || format!("augmentation of the value on {s} is {e}"))?;
        } else {
            let lhs = v.boundary(ring);
            let rhs = signed_faces(s, |f| phi.assignment[f].clone(), s.dim() - 1, ring);
            ensure(lhs == rhs, || format!("law fails at {s}"))?;
        }
    }
    Ok(())
}

fn homotopy_holds(d: &ChainHomotopy, phi: &ChainMorphism, psi: &ChainMorphism, ring: &Ring) -> Result<(), String> {
    for s in phi.source.all_simplices().filter(|s| s.dim() <= d.degree_cap) {
        let lhs = d.assignment[s].boundary(ring);
        let lhs = if s.dim() == 0 {
            lhs
        } else {
            lhs.add(&signed_faces(s, |f| d.assignment[f].clone(), s.dim(), ring), ring)
        };
        let rhs = phi.assignment[s].sub(&psi.assignment[s], ring);
        ensure(lhs == rhs, || format!("homotopy identity fails at {s}"))?;
    }
    Ok(())
}

fn empty() -> SimplicialComplex {
    SimplicialComplex::new(Vec::<String>::new(), &[] as &[Vec<String>]).expect("empty complex")
}

fn identity_constant_homotopy(k: &SimplicialComplex, x: &SimplicialComplex, phi: ChainMorphism, apex: &str, n: usize, ring: &Ring)
    -> Result<(ChainHomotopy, ChainMorphism, ChainMorphism), ConstructError> {
    let psi = ChainMorphism::constant(k, x, apex, n, ring)?;
    let a = empty();
    let p = HomotopyProblem {
        phi: phi.clone(),
        psi: psi.clone(),
        d_a: ChainHomotopy::zero(&a, x, n, ring),
        a,
        f: SimplicialMap::identity(x),
        tower: FiltrationTower::trivial(x, n)?,
        ring: ring.clone(),
    };
    let cert = build_homotopy(&p)?;
    Ok((cert.d, phi, psi))
}

fn criterion_laws() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let target_names: Vec<String> = (0..5).map(|i| format!("t{i}")).collect();
    let target = SimplicialComplex::full_simplex(&target_names).expect("simplex");
    let mut checks = 0;
    for i in 0..LAW_INSTANCES {
        let ring = random_ring(&mut rng, i);
        let k = SimplicialComplex::from_simplices(&random_facets(&mut rng, 8, 4)).map_err(|e| e.to_string())?;
        let top = k.dim().unwrap_or(0);
        // ∂∘∂ = 0, and the boundary agrees with the oracle matrix over Z
        for d in 1..=top {
            let c = random_chain(&mut rng, &k, d, &ring);
            ensure(c.boundary(&ring).boundary(&ring).is_zero(), || format!("instance {i}: ∂∂ ≠ 0 in degree {d}"))?;
            if ring == Ring::Integers {
                let facets: Vec<Vec<String>> = k.facets().iter().map(|s| s.vertices().to_vec()).collect();
                let cells = oracle::closure(&facets);
                let m = oracle::boundary(&cells, d);
                let x: Vec<i128> = cells[d].iter().map(|s| scalar_i128(&c.coefficient(&Simplex::new(s).expect("simplex"))).0).collect();
                let b = c.boundary(&ring);
                for (r, face) in cells[d - 1].iter().enumerate() {
                    let want: i128 = m[r].iter().zip(&x).map(|(a, b)| a * b).sum();
                    let got = scalar_i128(&b.coefficient(&Simplex::new(face).expect("simplex"))).0;
                    ensure(want == got, || format!("instance {i}: boundary coefficient mismatch"))?;
                }
            }
            checks += 1;
        }
        // ε∘∂_1 = 0
        if top >= 1 {
            let c = random_chain(&mut rng, &k, 1, &ring);
            let e = c.boundary(&ring).augmentation(&ring).map_err(|e| e.to_string())?;
            ensure(ring.is_zero(&e), || format!("instance {i}: ε∂ ≠ 0"))?;
            checks += 1;
        }
        // morphism and homotopy laws for a random map into a simplex
        let g: BTreeMap<String, String> =
            k.vertices().iter().map(|v| (v.clone(), target_names.choose(&mut rng).expect("names").clone())).collect();
        let g = SimplicialMap::new(k.clone(), target.clone(), g).map_err(|e| e.to_string())?;
        let phi = ChainMorphism::induced(&g, top, &ring);
        laws_hold(&phi, &ring).map_err(|e| format!("instance {i}: {e}"))?;
        let (d, phi, psi) = identity_constant_homotopy(&k, &target, phi, "t0", top, &ring)
            .map_err(|e| format!("instance {i}: {e}"))?;
        homotopy_holds(&d, &phi, &psi, &ring).map_err(|e| format!("instance {i}: {e}"))?;
        checks += 2;
    }
    Ok(format!("{LAW_INSTANCES} instances, {checks} identities, 0 failures"))
}

// ---------------------------------------------------------------- criterion 3

fn realization_of(p: &Problem) -> Result<RealizationProblem, String> {
    let k = p.complex("k").map_err(|e| e.to_string())?;
    let l = p.complex("l").map_err(|e| e.to_string())?;
    Ok(RealizationProblem {
        k: k.clone(),
        l: l.clone(),
        phi_l: p.morphisms["phi_l"].morphism.clone(),
        f: p.maps["f"].map.clone(),
        tower: p.towers["tower"].tower.clone(),
        ring: p.ring.clone(),
    })
}

/// Restriction, morphism law, and the cover condition at each simplex.
fn check_extension(p: &RealizationProblem, cert: &ExtensionCertificate) -> Result<(), String> {
    let ring = &p.ring;
    let phi = &cert.phi;
    for s in p.l.all_simplices() {
        ensure(phi.assignment.get(s) == p.phi_l.assignment.get(s), || format!("restriction differs at {s}"))?;
    }
    ensure(p.k.all_simplices().all(|s| phi.assignment.contains_key(s)), || "undefined on some simplex".into())?;
    laws_hold(phi, ring)?;
    for s in p.k.all_simplices() {
        let lm = cert.cover_assignment.get(s).ok_or_else(|| format!("no member for {s}"))?;
        ensure(lm.level == s.dim(), || format!("{s} assigned to level {}", lm.level))?;
        let member = p.tower.level(lm.level).member(&lm.member).ok_or_else(|| format!("unknown member {}", lm.member))?;
        let allowed = p.f.preimage_vertices(&member.vertices);
        for face in s.all_faces() {
            ensure(phi.assignment[&face].carrier_vertices().is_subset(&allowed), || {
                format!("value on {face} leaves the preimage of {}", lm.member)
            })?;
        }
    }
    Ok(())
}

fn criterion_realization() -> Verdict {
    let start = Instant::now();
    let mut fills = 0;
    for seed in 0..REALIZATION_INSTANCES {
        let file = instance(Family::Realization, seed);
        let text = to_pretty(&file);
        let p = Problem::from_file(&file).map_err(|e| e.to_string())?;
        let rp = realization_of(&p)?;
        ensure(rp.k.dim().unwrap_or(0) <= 3 && rp.k.len() <= 40, || format!("seed {seed}: K too large"))?;
        ensure(check_uvn_map(&rp.f, &rp.tower, rp.tower.top_degree(), &p.ring).is_ok_and(|r| r.holds()), || {
            format!("seed {seed}: generated map is not UV^n")
        })?;
        let out = solve(Kind::ExtendRealization, &text, &opts());
        ensure(out.code == 0, || format!("seed {seed}: exit {}\n{}", out.code, out.report))?;
        let cert_text = out.certificate.ok_or("no certificate")?;
        let v = verify_certificate(&cert_text);
        ensure(v.code == 0, || format!("seed {seed}: verification failed\n{}", v.report))?;
        let cf: CertificateFile = serde_json::from_str(&cert_text).map_err(|e| e.to_string())?;
        let doc: ExtensionDoc = serde_json::from_value(cf.result).map_err(|e| e.to_string())?;
        let cert = parse_extension(&doc, &rp.k, rp.f.source(), &p.ring).map_err(|e| e.to_string())?;
        check_extension(&rp, &cert).map_err(|e| format!("seed {seed}: {e}"))?;
        fills += cert.fill_log.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < REALIZATION_BUDGET, || format!("took {elapsed:?}, budget {REALIZATION_BUDGET:?}"))?;
    Ok(format!("{REALIZATION_INSTANCES} instances, {fills} fills, all verified in {} ms", elapsed.as_millis()))
}

// ---------------------------------------------------------------- criterion 4

/// Whether `c` bounds in `u`, by the oracle.
fn oracle_bounds(c: &Chain, u: &SimplicialComplex, ring: &Ring) -> bool {
    let facets: Vec<Vec<String>> = u.facets().iter().map(|s| s.vertices().to_vec()).collect();
    let cells = oracle::closure(&facets);
    let d = c.dim();
    let m = oracle::boundary(&cells, d + 1);
    let coeffs: Vec<(i128, i128)> = cells[d].iter().map(|s| scalar_i128(&c.coefficient(&Simplex::new(s).expect("simplex")))).collect();
    match ring {
        Ring::Integers => oracle::in_integer_image(&m, &coeffs.iter().map(|x| x.0).collect::<Vec<_>>()),
        Ring::Rationals => {
            let l = coeffs.iter().fold(1i128, |acc, x| acc * x.1 / gcd(acc, x.1));
            let b: Vec<i128> = coeffs.iter().map(|x| x.0 * (l / x.1)).collect();
            let mut aug = m.clone();
            for (row, x) in aug.iter_mut().zip(&b) {
                row.push(*x);
            }
            oracle::rank_q(&aug) == oracle::rank_q(&m)
        }
        Ring::IntegersMod(p) => {
            let p: i128 = p.to_string().parse().expect("small modulus");
            let mut aug = m.clone();
            for (row, x) in aug.iter_mut().zip(&coeffs) {
                row.push(x.0);
            }
            oracle::rank_mod(&aug, p) == oracle::rank_mod(&m, p)
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn criterion_obstruction() -> Verdict {
    for seed in 0..OBSTRUCTION_INSTANCES {
        let file = instance(Family::Obstruction, seed);
        let p = Problem::from_file(&file).map_err(|e| e.to_string())?;
        let rp = realization_of(&p)?;
        let out = solve(Kind::ExtendRealization, &to_pretty(&file), &opts());
        ensure(out.code == 1 && out.report.contains("obstruction cycle:"), || {
            format!("seed {seed}: expected an obstruction, got exit {}\n{}", out.code, out.report)
        })?;
        let o = match extend_realization(&rp) {
            Err(ConstructError::NotFillable(o)) => o,
            Ok(_) => return Err(format!("seed {seed}: false success")),
            Err(e) => return Err(format!("seed {seed}: {e}")),
        };
        let member = p.towers["tower"].tower.level(o.level + 1).member(&o.member).ok_or("unknown member")?;
        let expected = rp.f.source().full_subcomplex(&rp.f.preimage_vertices(&member.vertices));
        ensure(o.subcomplex == expected, || format!("seed {seed}: obstruction names the wrong subcomplex"))?;
        ensure(o.cycle.is_cycle(&p.ring), || format!("seed {seed}: witness is not a cycle"))?;
        let filled = fill_cycle(&o.cycle, &o.subcomplex, &p.ring).map_err(|e| e.to_string())?;
        ensure(filled.is_none(), || format!("seed {seed}: homology fills the witness"))?;
        ensure(!oracle_bounds(&o.cycle, &o.subcomplex, &p.ring), || format!("seed {seed}: oracle fills the witness"))?;
        // the oracle does recognize boundaries in the same subcomplex
        let top = o.subcomplex.simplices(o.cycle.dim() + 1).next().cloned();
        if let Some(t) = top {
            let b = Chain::simplex(t).boundary(&p.ring);
            ensure(oracle_bounds(&b, &o.subcomplex, &p.ring), || format!("seed {seed}: oracle misses a boundary"))?;
        }
    }
    Ok(format!("{OBSTRUCTION_INSTANCES} planted obstructions found, 0 false successes"))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_lift() -> Verdict {
    let mut close_checks = 0;
    for seed in 0..PRISM_INSTANCES {
        let file = instance(Family::Prism, seed);
        let p = Problem::from_file(&file).map_err(|e| e.to_string())?;
        let out = solve(Kind::Lift, &to_pretty(&file), &opts());
        ensure(out.code == 0, || format!("seed {seed}: exit {}\n{}", out.code, out.report))?;
        let cert_text = out.certificate.ok_or("no certificate")?;
        let v = verify_certificate(&cert_text);
        ensure(v.code == 0, || format!("seed {seed}: verification failed\n{}", v.report))?;
        let cf: CertificateFile = serde_json::from_str(&cert_text).map_err(|e| e.to_string())?;
        let doc: LiftDoc = serde_json::from_value(cf.result).map_err(|e| e.to_string())?;
        let k = p.complex("k").map_err(|e| e.to_string())?;
        let f = &p.maps["f"].map;
        let cert = parse_lift(&doc, k, f.source(), &p.ring).map_err(|e| e.to_string())?;
        let phi = &p.morphisms["phi"].morphism;
        let top = p.towers["tower"].tower.top();
        let pushed = ChainMorphism::induced(f, cert.extension.phi.degree_cap, &p.ring)
            .compose(&cert.extension.phi)
            .map_err(|e| e.to_string())?;
        let again = is_close(phi, &pushed, top).map_err(|e| e.to_string())?;
        ensure(again.holds(), || format!("seed {seed}: closeness does not re-validate"))?;
        // every claimed member carries both values on the simplex
        for (s, m) in &cert.closeness.assignment {
            let member = top.member(m).ok_or_else(|| format!("seed {seed}: unknown member {m}"))?;
            let mut carrier = phi.assignment[s].carrier_vertices();
            carrier.extend(pushed.assignment[s].carrier_vertices());
            ensure(carrier.is_subset(&member.vertices), || format!("seed {seed}: {m} does not carry {s}"))?;
            close_checks += 1;
        }
        ensure(cert.closeness.assignment.len() == k.len(), || format!("seed {seed}: closeness skips simplices"))?;
    }
    Ok(format!("{PRISM_INSTANCES}/{PRISM_INSTANCES} prism lifts, {close_checks} closeness memberships re-validated"))
}

// ---------------------------------------------------------------- criterion 6

fn cone_over(base: &[Vec<String>]) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = base
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.push("apex".into());
            f
        })
        .collect();
    SimplicialComplex::from_simplices(&facets).expect("cone")
}

fn criterion_homotopy() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut spaces: Vec<SimplicialComplex> = (2..=5)
        .map(|n| {
            let v: Vec<String> = (0..n).map(|i| format!("apex{}", if i == 0 { String::new() } else { i.to_string() })).collect();
            SimplicialComplex::full_simplex(&v).expect("simplex")
        })
        .collect();
    for _ in 0..20 {
        spaces.push(cone_over(&random_facets(&mut rng, 5, 2)));
    }
    let mut built = 0;
    for (i, k) in spaces.iter().enumerate() {
        let ring = random_ring(&mut rng, i);
        let n = k.dim().unwrap_or(0);
        let phi = ChainMorphism::identity(k, n, &ring);
        let (d, phi, psi) = identity_constant_homotopy(k, k, phi, "apex", n, &ring).map_err(|e| format!("space {i}: {e}"))?;
        homotopy_holds(&d, &phi, &psi, &ring).map_err(|e| format!("space {i}: {e}"))?;
        built += 1;
    }
    let circle = SimplicialComplex::from_simplices(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).expect("circle");
    let mut obstructed = 0;
    for ring in [Ring::Integers, zmod(2), Ring::Rationals] {
        let phi = ChainMorphism::identity(&circle, 1, &ring);
        match identity_constant_homotopy(&circle, &circle, phi, "a", 1, &ring) {
            Err(ConstructError::NotFillable(o)) => {
                ensure(o.level == 1 && o.cycle.dim() == 1, || format!("circle over {ring}: obstruction at level {}", o.level))?;
                ensure(!oracle_bounds(&o.cycle, &circle, &ring), || format!("circle over {ring}: witness bounds"))?;
                ensure(!homology(&circle, 1, &ring).is_trivial(), || "H_1 of the circle vanishes".into())?;
                obstructed += 1;
            }
            Ok(_) => return Err(format!("circle over {ring}: homotopy built at n = 1")),
            Err(e) => return Err(format!("circle over {ring}: {e}")),
        }
    }
    Ok(format!("{built} homotopies on cones and simplices, {obstructed}/3 circle obstructions in H_1"))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_approx() -> Verdict {
    let mut instances = 0;
    let mut triples = 0;
    let mut seed = 0;
    while instances < UVN_INSTANCES {
        ensure(seed < UVN_SEED_LIMIT, || format!("only {instances} UV^n instances in {UVN_SEED_LIMIT} seeds"))?;
        let file = instance(Family::Uvn, seed);
        seed += 1;
        let p = Problem::from_file(&file).map_err(|e| e.to_string())?;
        let n = p.usize_arg("n").map_err(|e| e.to_string())?.ok_or("no n")?;
        let f = &p.maps["f"].map;
        let tower = &p.towers["tower"].tower;
        if !check_uvn_map(f, tower, n, &p.ring).map_err(|e| e.to_string())?.holds() {
            continue;
        }
        instances += 1;
        let y = f.target();
        for i in 0..tower.level(0).len() {
            let v = y.full_subcomplex(&tower.level(0).members()[i].vertices);
            let w = y.full_subcomplex(&tower.pairs(0)[tower.witness(0, i)].inner);
            let path = tower.chase(i, n + 1);
            let u = y.full_subcomplex(&tower.level(n + 1).members()[path[n + 1]].vertices);
            let r = check_approx_lcn(&v, &w, &u, n, &p.ring, true).map_err(|e| format!("seed {}: {e}", seed - 1))?;
            ensure(r.holds(), || format!("seed {}: triple at member {i} has no companion", seed - 1))?;
            triples += 1;
        }
    }
    Ok(format!("{instances} UV^n instances (of {seed} seeds), {triples} triples, 0 violations"))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_cross_path() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nontrivial = 0;
    for i in 0..PAIR_INSTANCES {
        let ring = random_ring(&mut rng, i);
        let u = SimplicialComplex::from_simplices(&random_facets(&mut rng, 7, 3)).map_err(|e| e.to_string())?;
        let chosen: Vec<Simplex> = u.all_simplices().filter(|_| rng.random_bool(0.3)).cloned().collect();
        let v = if chosen.is_empty() {
            SimplicialComplex::new([u.vertices()[0].as_str()], &[] as &[Vec<String>]).map_err(|e| e.to_string())?
        } else {
            u.subcomplex(&chosen).map_err(|e| e.to_string())?
        };
        let d = rng.random_range(0..=u.dim().unwrap_or(0));
        let a = is_trivial_induced(&v, &u, d, &ring).map_err(|e| e.to_string())?.trivial;
        let inc = ChainMorphism::inclusion(&v, &u, d + 1, &ring).map_err(|e| e.to_string())?;
        let b = induced_map(&inc, d).map_err(|e| e.to_string())?.is_zero();
        ensure(a == b, || format!("pair {i} in degree {d} over {ring}: fill says {a}, matrix says {b}"))?;
        if !a {
            nontrivial += 1;
        }
    }
    Ok(format!("{PAIR_INSTANCES} pairs agree ({nontrivial} nontrivial)"))
}

// ---------------------------------------------------------------- criterion 9

fn kind_for(name: &str) -> Kind {
    match name {
        n if SURFACES.contains(&n) => Kind::Homology,
        "circle_uvn" | "gen_uvn_7" => Kind::CheckUvn,
        "edge_triangle" | "gen_realization_7" | "gen_obstruction_7" => Kind::ExtendRealization,
        "triangle_homotopy" | "circle_homotopy" => Kind::BuildHomotopy,
        "path_dugundji" => Kind::DugundjiExtend,
        "path_nerve" => Kind::NerveFactorize,
        "gen_prism_7" => Kind::Lift,
        other => panic!("corpus file {other} has no command"),
    }
}

fn run_binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_chaincert"))
        .args(args)
        .env("CHAINCERT_COLOR", "0")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_determinism() -> Verdict {
    let files = corpus();
    let tmp = std::env::temp_dir().join(format!("chaincert-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    let mut certificates = 0;
    for (name, text) in &files {
        // parse → serialize → parse
        let raw: ProblemFile = serde_json::from_str(text).map_err(|e| format!("{name}: {e}"))?;
        let again: ProblemFile = serde_json::from_str(&to_pretty(&raw)).map_err(|e| format!("{name}: {e}"))?;
        ensure(raw == again, || format!("{name}: document round trip differs"))?;
        let p = Problem::from_json(text).map_err(|e| format!("{name}: {e}"))?;
        let canonical = p.to_json();
        let q = Problem::from_json(&canonical).map_err(|e| format!("{name}: {e}"))?;
        ensure(p == q, || format!("{name}: resolved problem changes under round trip"))?;
        ensure(q.to_json() == canonical, || format!("{name}: canonical form is not stable"))?;
        // repeated runs, in process and through the binary
        let kind = kind_for(name);
        let a = solve(kind, text, &opts());
        let b = solve(kind, text, &opts());
        ensure(a == b, || format!("{name}: in-process runs differ"))?;
        let path = corpus_dir().join(format!("{name}.json"));
        let path = path.to_str().expect("utf-8 path");
        let c1 = tmp.join(format!("{name}-1.cert.json"));
        let c2 = tmp.join(format!("{name}-2.cert.json"));
        let r1 = run_binary(&[kind.name(), path, "--certificate", c1.to_str().expect("utf-8")]);
        let r2 = run_binary(&[kind.name(), path, "--certificate", c2.to_str().expect("utf-8")]);
        ensure(r1.0 == a.code && r1.0 == r2.0, || format!("{name}: exit codes {} / {} / {}", a.code, r1.0, r2.0))?;
        let strip = |s: &[u8]| String::from_utf8_lossy(s).lines().filter(|l| !l.starts_with("certificate:")).collect::<Vec<_>>().join("\n");
        ensure(strip(&r1.1) == strip(&r2.1), || format!("{name}: reports differ between runs"))?;
        ensure(strip(&r1.1) == strip(a.report.as_bytes()), || format!("{name}: binary and library reports differ"))?;
        if let Some(cert) = &a.certificate {
            let f1 = std::fs::read_to_string(&c1).map_err(|e| e.to_string())?;
            let f2 = std::fs::read_to_string(&c2).map_err(|e| e.to_string())?;
            ensure(&f1 == cert && f1 == f2, || format!("{name}: certificates differ between runs"))?;
            let parsed: CertificateFile = serde_json::from_str(cert).map_err(|e| e.to_string())?;
            ensure(&to_pretty(&parsed) == cert, || format!("{name}: certificate round trip differs"))?;
            let (code, _) = run_binary(&["verify-certificate", c1.to_str().expect("utf-8")]);
            ensure(code == 0, || format!("{name}: certificate does not verify"))?;
            certificates += 1;
        }
    }
    for family in [Family::Realization, Family::Uvn, Family::Prism, Family::Obstruction] {
        ensure(instance(family, 11) == instance(family, 11), || format!("{family:?}: generator is not deterministic"))?;
    }
    let _ = std::fs::remove_dir_all(&tmp);
    Ok(format!("{} corpus files round-trip, {certificates} certificates byte-identical and verified", files.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("homology corpus against the dense oracle", criterion_homology),
        ("boundary, augmentation, morphism and homotopy laws", criterion_laws),
        ("realization extension on generated instances", criterion_realization),
        ("planted obstructions are reported, never filled", criterion_obstruction),
        ("approximate lifts on the prism family", criterion_lift),
        ("small homotopies, and the circle obstruction", criterion_homotopy),
        ("UV^n maps give approximately lc^n targets", criterion_approx),
        ("fill test agrees with the induced matrix", criterion_cross_path),
        ("determinism and round trips", criterion_determinism),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
}
