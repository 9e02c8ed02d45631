//! Certificate checks that re-derive every claim of a construction.
//!
//! These walk the raw assignments directly with their own boundary, push
//! forward and carrier code, so a bug in the constructors or in
//! [`crate::chains`] cannot silently vouch for itself.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::chains::Chain;
use crate::coefficients::{Ring, Scalar};
use crate::complexes::{Cover, FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, VertexSet};
use crate::constructors::{
    DugundjiCertificate, ExtensionCertificate, HomotopyCertificate, HomotopyProblem, LevelMember,
    LiftCertificate, LiftProblem, NerveFactorization, RealizationProblem,
};

type Terms = BTreeMap<Simplex, Scalar>;

/// Outcome of one named check, with every failure found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Check {
        Check { name: name.into(), failures: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A list of checks; passes when all do.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &str)> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.name.as_str(), f.as_str())))
    }
}

fn accumulate(out: &mut Terms, s: Simplex, x: &Scalar, ring: &Ring) {
    let v = ring.add(out.get(&s).unwrap_or(&ring.zero()), x);
    if ring.is_zero(&v) {
        out.remove(&s);
    } else {
        out.insert(s, v);
    }
}

fn terms(c: &Chain, ring: &Ring) -> Terms {
    let mut out = Terms::new();
    for (s, x) in c.terms() {
        accumulate(&mut out, s.clone(), x, ring);
    }
    out
}

fn combine(a: &Terms, b: &Terms, sign: i64, ring: &Ring) -> Terms {
    let mut out = a.clone();
    let sign = crate::coefficients::int(sign);
    for (s, x) in b {
        accumulate(&mut out, s.clone(), &ring.mul(&sign, x), ring);
    }
    out
}

/// Boundary of raw terms; positive dimensions only.
fn boundary(t: &Terms, ring: &Ring) -> Terms {
    let mut out = Terms::new();
    for (s, x) in t {
        let verts = s.vertices();
        if verts.len() < 2 {
            continue;
        }
        for i in 0..verts.len() {
            let face: Vec<&str> = verts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.as_str()).collect();
            let face = Simplex::new(&face).expect("faces of a simplex are simplices");
            let c = if i % 2 == 0 { x.clone() } else { ring.neg(x) };
            accumulate(&mut out, face, &c, ring);
        }
    }
    out
}

fn augmentation(t: &Terms, ring: &Ring) -> Scalar {
    t.values().fold(ring.zero(), |acc, x| ring.add(&acc, x))
}

fn push(t: &Terms, f: &SimplicialMap, ring: &Ring) -> Terms {
    let mut out = Terms::new();
    for (s, x) in t {
        let images: Vec<&str> = s.vertices().iter().map(|v| f.apply_vertex(v)).collect();
        if let Some((img, sign)) = Simplex::oriented(&images) {
            let c = if sign > 0 { x.clone() } else { ring.neg(x) };
            accumulate(&mut out, img, &c, ring);
        }
    }
    out
}

fn carrier(t: &Terms) -> VertexSet {
    t.keys().flat_map(|s| s.vertices().iter().cloned()).collect()
}

fn faces(s: &Simplex) -> Vec<Simplex> {
    let v = s.vertices();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << v.len()) {
        let picked: Vec<&str> = (0..v.len()).filter(|i| mask & (1 << i) != 0).map(|i| v[i].as_str()).collect();
        out.push(Simplex::new(&picked).expect("subsets of a simplex are simplices"));
    }
    out
}

/// Morphism law for a raw assignment on `source` up to `cap`, landing in
/// `target`: values exist, have the right dimension, live in the target,
/// vertices augment to one and `∂φ = φ∂`.
fn morphism_law(
    check: &mut Check,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    cap: usize,
    values: &BTreeMap<Simplex, Chain>,
    ring: &Ring,
) {
    for s in source.all_simplices().filter(|s| s.dim() <= cap) {
        let Some(v) = values.get(s) else {
            check.fail(format!("{s}: no value"));
            continue;
        };
        if v.dim() != s.dim() {
            check.fail(format!("{s}: value has dimension {}", v.dim()));
            continue;
        }
        if let Some(t) = v.terms().keys().find(|t| t.dim() != s.dim() || !target.contains(t)) {
            check.fail(format!("{s}: {t} is not a simplex of the target"));
            continue;
        }
        let t = terms(v, ring);
        if s.dim() == 0 {
            if !ring.is_one(&augmentation(&t, ring)) {
                check.fail(format!("{s}: vertex value does not augment to one"));
            }
            continue;
        }
        let lhs = boundary(&t, ring);
        let mut rhs = Terms::new();
        for (face, x) in boundary(&Terms::from([(s.clone(), ring.one())]), ring) {
            match values.get(&face) {
                Some(c) => {
                    for (u, y) in c.terms() {
                        accumulate(&mut rhs, u.clone(), &ring.mul(&x, y), ring);
                    }
                }
                None => check.fail(format!("{s}: face {face} has no value")),
            }
        }
        if lhs != rhs {
            check.fail(format!("{s}: boundary of the value differs from the value of the boundary"));
        }
    }
}

fn member<'a>(tower: &'a FiltrationTower, lm: &LevelMember) -> Option<&'a VertexSet> {
    tower.levels().get(lm.level).and_then(|c| c.member(&lm.member)).map(|m| &m.vertices)
}

/// Restriction to `L`, the morphism law, and the per-simplex cover condition:
/// for every `k`-simplex `σ` of `K`, the named member of `T_k` contains the
/// image of the carriers on all faces of `σ`.
pub fn verify_extension(p: &RealizationProblem, cert: &ExtensionCertificate) -> Report {
    let ring = &p.ring;
    let phi = &cert.phi.assignment;
    let mut restriction = Check::new("restriction");
    for s in p.l.all_simplices() {
        match (phi.get(s), p.phi_l.assignment.get(s)) {
            (Some(a), Some(b)) if terms(a, ring) == terms(b, ring) => {}
            _ => restriction.fail(format!("{s}: value differs from the partial realization")),
        }
    }
    let mut law = Check::new("morphism law");
    if cert.phi.source != p.k || cert.phi.target != *p.f.source() {
        law.fail("morphism has the wrong source or target".into());
    }
    morphism_law(&mut law, &p.k, p.f.source(), p.k.dim().unwrap_or(0), phi, ring);
    let mut cover = Check::new("cover condition");
    for s in p.k.all_simplices() {
        let Some(lm) = cert.cover_assignment.get(s) else {
            cover.fail(format!("{s}: no member recorded"));
            continue;
        };
        if lm.level != s.dim() {
            cover.fail(format!("{s}: member recorded at level {}", lm.level));
            continue;
        }
        let Some(set) = member(&p.tower, lm) else {
            cover.fail(format!("{s}: unknown member {}", lm.member));
            continue;
        };
        for t in faces(s) {
            let Some(v) = phi.get(&t) else { continue };
            let image: VertexSet = carrier(&terms(v, ring)).iter().map(|x| p.f.apply_vertex(x).into()).collect();
            if !image.is_subset(set) {
                cover.fail(format!("{s}: image of the carrier on {t} leaves {}", lm.member));
            }
        }
    }
    Report { checks: alloc::vec![restriction, law, cover] }
}

/// Recheck a closeness assignment: for every simplex of `source` up to `cap`,
/// the recorded member contains the carriers of both value families on all
/// faces.
fn closeness_check(
    check: &mut Check,
    source: &SimplicialComplex,
    cap: usize,
    a: &BTreeMap<Simplex, Terms>,
    b: &BTreeMap<Simplex, Terms>,
    assignment: &BTreeMap<Simplex, String>,
    cover: &Cover,
) {
    for s in source.all_simplices().filter(|s| s.dim() <= cap) {
        let Some(set) = assignment.get(s).and_then(|name| cover.member(name)).map(|m| &m.vertices) else {
            check.fail(format!("{s}: no valid member recorded"));
            continue;
        };
        for t in faces(s) {
            for family in [a, b] {
                match family.get(&t) {
                    Some(v) if carrier(v).is_subset(set) => {}
                    Some(_) => check.fail(format!("{s}: carrier on {t} leaves {}", assignment[s])),
                    None => check.fail(format!("{s}: face {t} has no value")),
                }
            }
        }
    }
}

/// Recheck a lift: `f_# ∘ phi_K` agrees with `phi` on `L`, lifted vertices
/// land in the right fibers, the morphism law holds, and the closeness
/// assignment on the top cover holds from scratch.
pub fn verify_lift(p: &LiftProblem, cert: &LiftCertificate) -> Report {
    let ring = &p.ring;
    let lift = &cert.extension.phi;
    let mut restriction = Check::new("restriction");
    for s in p.l.all_simplices() {
        match (lift.assignment.get(s), p.phi_l.assignment.get(s)) {
            (Some(a), Some(b)) if terms(a, ring) == terms(b, ring) => {}
            _ => restriction.fail(format!("{s}: lift differs from the given partial lift")),
        }
    }
    for (v, x) in &cert.lifted_vertices {
        let s = Simplex::vertex(v);
        let expected = Terms::from([(Simplex::vertex(x), ring.one())]);
        if lift.assignment.get(&s).map(|c| terms(c, ring)) != Some(expected) {
            restriction.fail(format!("{v}: lift is not the chosen vertex {x}"));
        }
        let image = p.phi.assignment.get(&s).map(|c| terms(c, ring));
        let pushed = Terms::from([(Simplex::vertex(p.f.apply_vertex(x)), ring.one())]);
        if image != Some(pushed) {
            restriction.fail(format!("{v}: {x} does not lie over the image of {v}"));
        }
    }
    let mut law = Check::new("morphism law");
    morphism_law(&mut law, &p.k, p.f.source(), p.k.dim().unwrap_or(0), &lift.assignment, ring);
    let mut close = Check::new("closeness");
    let cap = lift.degree_cap.min(p.phi.degree_cap);
    let given: BTreeMap<Simplex, Terms> = p.phi.assignment.iter().map(|(s, c)| (s.clone(), terms(c, ring))).collect();
    let pushed: BTreeMap<Simplex, Terms> =
        lift.assignment.iter().map(|(s, c)| (s.clone(), push(&terms(c, ring), &p.f, ring))).collect();
    closeness_check(&mut close, &p.k, cap, &given, &pushed, &cert.closeness.assignment, p.tower.top());
    Report { checks: alloc::vec![restriction, law, close] }
}

/// Recheck a homotopy: `∂D + D∂ = phi - psi` on every generator up to `n`,
/// `D` equals the given homotopy on `A`, and for every `k`-simplex the
/// recorded member of `T_{k+1}` contains the images of the carriers of `D`,
/// `phi` and `psi` on all faces.
pub fn verify_homotopy_certificate(p: &HomotopyProblem, cert: &HomotopyCertificate) -> Report {
    let ring = &p.ring;
    let d = &cert.d.assignment;
    let n = p.tower.top_degree();
    let source = &p.phi.source;
    let mut identity = Check::new("homotopy identity");
    for s in source.all_simplices().filter(|s| s.dim() <= n) {
        let Some(ds) = d.get(s) else {
            identity.fail(format!("{s}: no value"));
            continue;
        };
        if ds.dim() != s.dim() + 1 || ds.terms().keys().any(|t| !p.f.source().contains(t)) {
            identity.fail(format!("{s}: value is not a chain of the right dimension in X"));
            continue;
        }
        let mut lhs = boundary(&terms(ds, ring), ring);
        for (face, x) in boundary(&Terms::from([(s.clone(), ring.one())]), ring) {
            if let Some(c) = d.get(&face) {
                for (u, y) in c.terms() {
                    accumulate(&mut lhs, u.clone(), &ring.mul(&x, y), ring);
                }
            }
        }
        let (Some(a), Some(b)) = (p.phi.assignment.get(s), p.psi.assignment.get(s)) else {
            identity.fail(format!("{s}: morphisms undefined"));
            continue;
        };
        let rhs = combine(&terms(a, ring), &terms(b, ring), -1, ring);
        if lhs != rhs {
            identity.fail(format!("{s}: the homotopy identity fails"));
        }
    }
    let mut relative = Check::new("agreement on A");
    for s in p.a.all_simplices().filter(|s| s.dim() <= n) {
        match (d.get(s), p.d_a.assignment.get(s)) {
            (Some(x), Some(y)) if terms(x, ring) == terms(y, ring) => {}
            _ => relative.fail(format!("{s}: differs from the given homotopy")),
        }
    }
    let mut cover = Check::new("cover condition");
    for s in source.all_simplices().filter(|s| s.dim() <= n) {
        let Some(lm) = cert.cover_assignment.get(s) else {
            cover.fail(format!("{s}: no member recorded"));
            continue;
        };
        let Some(set) = member(&p.tower, lm).filter(|_| lm.level == s.dim() + 1) else {
            cover.fail(format!("{s}: invalid member {} at level {}", lm.member, lm.level));
            continue;
        };
        for t in faces(s) {
            for family in [d, &p.phi.assignment, &p.psi.assignment] {
                let Some(v) = family.get(&t) else { continue };
                let image: VertexSet = carrier(&terms(v, ring)).iter().map(|x| p.f.apply_vertex(x).into()).collect();
                if !image.is_subset(set) {
                    cover.fail(format!("{s}: image of a carrier on {t} leaves {}", lm.member));
                }
            }
        }
    }
    Report { checks: alloc::vec![identity, relative, cover] }
}

/// Recheck a Dugundji-type extension: agreement with `phi` on `A ∩ W`, the
/// nearest-vertex choices and their factor-two bound, and the morphism law.
pub fn verify_dugundji(
    m: &SimplicialComplex,
    a: &SimplicialComplex,
    phi: &crate::ChainMorphism,
    f: &SimplicialMap,
    cert: &DugundjiCertificate,
) -> Report {
    let ring = &phi.ring;
    let ext = &cert.extension.phi;
    let mut agree = Check::new("agreement on A");
    for s in a.all_simplices().filter(|s| cert.w.contains(s)) {
        match (ext.assignment.get(s), phi.assignment.get(s)) {
            (Some(x), Some(y)) if terms(x, ring) == terms(y, ring) => {}
            _ => agree.fail(format!("{s}: differs from phi")),
        }
    }
    let mut nearest = Check::new("nearest vertices");
    let a_set = a.vertex_set();
    let to_a = bfs(m, &a_set);
    for x in &cert.nearest {
        let from = bfs(m, &VertexSet::from([x.vertex.clone()]));
        let d = to_a.get(&x.vertex).copied();
        let rho = from.get(&x.nearest).copied();
        if !a_set.contains(&x.nearest) || d != Some(x.distance) || rho != d {
            nearest.fail(format!("{}: {} is not a nearest vertex of A", x.vertex, x.nearest));
        }
        if rho.zip(d).is_none_or(|(r, d)| r >= 2 * d) {
            nearest.fail(format!("{}: factor-two bound fails", x.vertex));
        }
        let expected = phi.assignment.get(&Simplex::vertex(&x.nearest)).map(|c| terms(c, ring));
        if ext.assignment.get(&Simplex::vertex(&x.vertex)).map(|c| terms(c, ring)) != expected {
            nearest.fail(format!("{}: value is not that of {}", x.vertex, x.nearest));
        }
    }
    let mut law = Check::new("morphism law");
    morphism_law(&mut law, &cert.w, f.source(), cert.w.dim().unwrap_or(0), &ext.assignment, ring);
    Report { checks: alloc::vec![agree, nearest, law] }
}

fn bfs(m: &SimplicialComplex, from: &VertexSet) -> BTreeMap<String, usize> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in m.simplices(1) {
        let v = e.vertices();
        adj.entry(&v[0]).or_default().push(&v[1]);
        adj.entry(&v[1]).or_default().push(&v[0]);
    }
    let mut dist: BTreeMap<String, usize> = from.iter().filter(|v| m.has_vertex(v)).map(|v| (v.clone(), 0)).collect();
    let mut queue: alloc::collections::VecDeque<String> = dist.keys().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for w in adj.get(v.as_str()).into_iter().flatten() {
            if !dist.contains_key(*w) {
                dist.insert((*w).into(), d + 1);
                queue.push_back((*w).into());
            }
        }
    }
    dist
}

/// Recheck a nerve factorization: `lambda` is the vertex assignment followed
/// by the repeat-collapsing map, the realization obeys the morphism law, and
/// the identity of `C(Y)` is close to `f_# ∘ Φ ∘ lambda` on `cover`.
pub fn verify_nerve_factorization(
    y: &SimplicialComplex,
    f: &SimplicialMap,
    top: &Cover,
    out: &NerveFactorization,
    ring: &Ring,
) -> Report {
    let cap = out.lambda.degree_cap;
    let mut lambda = Check::new("nerve morphism");
    let mut round: BTreeMap<Simplex, Terms> = BTreeMap::new();
    let identity: BTreeMap<Simplex, Terms> =
        y.all_simplices().map(|s| (s.clone(), Terms::from([(s.clone(), ring.one())]))).collect();
    for s in y.all_simplices().filter(|s| s.dim() <= cap) {
        let names: Vec<&str> = s.vertices().iter().map(|v| out.vertex_assignment[v].as_str()).collect();
        let expected = match Simplex::oriented(&names) {
            Some((t, sign)) => Terms::from([(t, if sign > 0 { ring.one() } else { ring.neg(&ring.one()) })]),
            None => Terms::new(),
        };
        let got = out.lambda.assignment.get(s).map(|c| terms(c, ring));
        if got.as_ref() != Some(&expected) {
            lambda.fail(format!("{s}: value is not the collapsed array of members"));
        }
        let mut through = Terms::new();
        for (t, x) in &expected {
            match out.phi.phi.assignment.get(t) {
                Some(c) => {
                    for (u, z) in push(&terms(c, ring), f, ring) {
                        accumulate(&mut through, u, &ring.mul(x, &z), ring);
                    }
                }
                None => lambda.fail(format!("{s}: realization undefined on {t}")),
            }
        }
        round.insert(s.clone(), through);
    }
    let mut law = Check::new("morphism law");
    morphism_law(&mut law, &out.k, f.source(), out.k.dim().unwrap_or(0), &out.phi.phi.assignment, ring);
    let mut close = Check::new("closeness");
    closeness_check(&mut close, y, cap, &identity, &round, &out.closeness.assignment, top);
    Report { checks: alloc::vec![lambda, law, close] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::ChainMorphism;
    use crate::constructors::extend_realization;
    use alloc::vec;

    #[test]
    fn extension_of_a_square_verifies_and_tampering_is_caught() {
        let r = Ring::Integers;
        let y = SimplicialComplex::from_simplices(&[vec!["a", "b", "c"], vec!["a", "c", "d"]]).unwrap();
        let l = y.skeleton(0);
        let phi_l = ChainMorphism::identity(&l, 0, &r);
        let mut phi_l = phi_l;
        phi_l.target = y.clone();
        let p = RealizationProblem {
            k: y.clone(),
            l,
            phi_l,
            f: SimplicialMap::identity(&y),
            tower: FiltrationTower::trivial(&y, 1).unwrap(),
            ring: r.clone(),
        };
        let mut cert = extend_realization(&p).unwrap();
        assert!(verify_extension(&p, &cert).passes());
        let e = Simplex::new(&["a", "b"]).unwrap();
        cert.phi.assignment.insert(e.clone(), Chain::zero(1));
        let report = verify_extension(&p, &cert);
        assert!(!report.passes());
        assert!(report.failures().any(|(name, _)| name == "morphism law"));
    }
}
