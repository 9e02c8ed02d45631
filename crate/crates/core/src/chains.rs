//! Oriented chains, boundary and augmentation, chain morphisms and chain
//! homotopies, and the closeness predicates comparing morphisms against a
//! cover.
//!
//! A degenerate image simplex (repeated vertices) contributes the zero chain,
//! which is what makes `f_#` a chain morphism on oriented chains.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::coefficients::{int, Ring, Scalar};
use crate::complexes::{Cover, Simplex, SimplicialComplex, SimplicialMap, VertexSet};
use crate::{Error, Result};

/// A finite `G`-combination of `k`-simplices. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Simplex, Scalar>,
}

impl Chain {
    pub fn zero(dim: usize) -> Chain {
        Chain { dim, terms: BTreeMap::new() }
    }

    /// `1 * s`.
    pub fn simplex(s: Simplex) -> Chain {
        Chain::term(s, Scalar::one())
    }

    pub fn term(s: Simplex, coefficient: Scalar) -> Chain {
        let dim = s.dim();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(s, coefficient);
        }
        Chain { dim, terms }
    }

    /// Build from `(coefficient, ordered vertices)` terms. Each ordering
    /// contributes the sign of its sorting permutation.
    pub fn from_terms<S: AsRef<str>>(
        dim: usize,
        terms: &[(Scalar, Vec<S>)],
        ring: &Ring,
    ) -> Result<Chain> {
        let mut c = Chain::zero(dim);
        for (coef, verts) in terms {
            if verts.len() != dim + 1 {
                return Err(Error::InvalidChain(format!(
                    "term with {} vertices in a {dim}-chain",
                    verts.len()
                )));
            }
            if !ring.admits(coef) {
                return Err(Error::BadCoefficient(coef.to_string()));
            }
            let (s, sign) = Simplex::oriented(verts)
                .ok_or_else(|| Error::InvalidChain("repeated vertex in a simplex".into()))?;
            c.add_term(s, &(coef * int(sign as i64)), ring);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Simplex) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Simplex, coefficient: &Scalar, ring: &Ring) {
        debug_assert_eq!(s.dim(), self.dim);
        let v = ring.add(&self.coefficient(&s), coefficient);
        if v.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, v);
        }
    }

    /// `self + t * other`.
    pub fn axpy(&self, t: &Scalar, other: &Chain, ring: &Ring) -> Chain {
        let mut out = self.clone();
        if other.is_zero() || t.is_zero() {
            return out;
        }
        assert_eq!(self.dim, other.dim, "adding chains of different dimensions");
        for (s, c) in &other.terms {
            out.add_term(s.clone(), &ring.mul(t, c), ring);
        }
        out
    }

    pub fn add(&self, other: &Chain, ring: &Ring) -> Chain {
        self.axpy(&Scalar::one(), other, ring)
    }

    pub fn sub(&self, other: &Chain, ring: &Ring) -> Chain {
        self.axpy(&-Scalar::one(), other, ring)
    }

    pub fn scale(&self, t: &Scalar, ring: &Ring) -> Chain {
        Chain::zero(self.dim).axpy(t, self, ring)
    }

    /// Re-reduce every coefficient in `ring`.
    pub fn reduced(&self, ring: &Ring) -> Chain {
        Chain::zero(self.dim).add(self, ring)
    }

    /// Alternating face sum. The boundary of a 0-chain is the zero 0-chain;
    /// the augmentation is separate.
    pub fn boundary(&self, ring: &Ring) -> Chain {
        if self.dim == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(self.dim - 1);
        for (s, c) in &self.terms {
            for (i, f) in s.boundary_faces().into_iter().enumerate() {
                let coef = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(f, &coef, ring);
            }
        }
        out
    }

    /// Sum of coefficients of a 0-chain.
    pub fn augmentation(&self, ring: &Ring) -> Result<Scalar> {
        if self.dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "augmentation of a {}-chain",
                self.dim
            )));
        }
        Ok(self.terms.values().fold(Scalar::zero(), |acc, c| ring.add(&acc, c)))
    }

    /// Cycle in the reduced sense: `∂c = 0`, and `ε(c) = 0` in degree 0.
    pub fn is_cycle(&self, ring: &Ring) -> bool {
        if self.dim == 0 {
            ring.is_zero(&self.augmentation(ring).expect("0-chain"))
        } else {
            self.boundary(ring).is_zero()
        }
    }

    /// Simplices in the support together with all their faces.
    pub fn carrier(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for s in self.terms.keys() {
            out.extend(s.all_faces());
        }
        out
    }

    /// Vertex set of the carrier; empty for the zero chain.
    pub fn carrier_vertices(&self) -> VertexSet {
        self.terms.keys().flat_map(|s| s.vertices().iter().cloned()).collect()
    }

    /// Every simplex of the support belongs to `k`.
    pub fn check_in(&self, k: &SimplicialComplex) -> Result<()> {
        match self.terms.keys().find(|s| !k.contains(s)) {
            Some(s) => Err(Error::UnknownSimplex(s.to_string())),
            None => Ok(()),
        }
    }

    /// Coordinates in the basis `basis` (which must contain the support).
    pub fn to_vector(&self, index: &BTreeMap<Simplex, usize>, len: usize) -> Result<Vec<Scalar>> {
        let mut v: Vec<Scalar> = (0..len).map(|_| Scalar::zero()).collect();
        for (s, c) in &self.terms {
            let i = index.get(s).ok_or_else(|| Error::CarrierOutside(s.to_string()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(dim: usize, basis: &[Simplex], v: &[Scalar], ring: &Ring) -> Chain {
        let mut c = Chain::zero(dim);
        for (s, x) in basis.iter().zip(v) {
            c.add_term(s.clone(), x, ring);
        }
        c
    }

    /// Image under a simplicial map, degenerate simplices dropped.
    pub fn push_forward(&self, f: &SimplicialMap, ring: &Ring) -> Chain {
        let mut out = Chain::zero(self.dim);
        for (s, c) in &self.terms {
            let image: Vec<&str> = s.vertices().iter().map(|v| f.apply_vertex(v)).collect();
            if let Some((t, sign)) = Simplex::oriented(&image) {
                out.add_term(t, &(c * int(sign as i64)), ring);
            }
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}{s}")?;
        }
        Ok(())
    }
}

/// A degree-0 family `C_k(source) -> C_k(target)` for `k <= degree_cap`,
/// given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMorphism {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub degree_cap: usize,
    pub ring: Ring,
    pub assignment: BTreeMap<Simplex, Chain>,
}

impl ChainMorphism {
    pub fn identity(k: &SimplicialComplex, degree_cap: usize, ring: &Ring) -> Self {
        let assignment = k
            .all_simplices()
            .filter(|s| s.dim() <= degree_cap)
            .map(|s| (s.clone(), Chain::simplex(s.clone())))
            .collect();
        ChainMorphism {
            source: k.clone(),
            target: k.clone(),
            degree_cap,
            ring: ring.clone(),
            assignment,
        }
    }

    /// Every vertex to `[w]`, every higher simplex to zero.
    pub fn constant(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        w: &str,
        degree_cap: usize,
        ring: &Ring,
    ) -> Result<Self> {
        if !target.has_vertex(w) {
            return Err(Error::UnknownVertex(w.to_string()));
        }
        let assignment = source
            .all_simplices()
            .filter(|s| s.dim() <= degree_cap)
            .map(|s| {
                let c = if s.dim() == 0 {
                    Chain::simplex(Simplex::vertex(w))
                } else {
                    Chain::zero(s.dim())
                };
                (s.clone(), c)
            })
            .collect();
        Ok(ChainMorphism {
            source: source.clone(),
            target: target.clone(),
            degree_cap,
            ring: ring.clone(),
            assignment,
        })
    }

    pub fn inclusion(
        sub: &SimplicialComplex,
        sup: &SimplicialComplex,
        degree_cap: usize,
        ring: &Ring,
    ) -> Result<Self> {
        if !sub.is_subcomplex_of(sup) {
            return Err(Error::NotSubcomplex("inclusion source is not contained in target".into()));
        }
        let mut m = ChainMorphism::identity(sub, degree_cap, ring);
        m.target = sup.clone();
        Ok(m)
    }

    /// The chain morphism `f_#` of a simplicial map.
    pub fn induced(f: &SimplicialMap, degree_cap: usize, ring: &Ring) -> Self {
        let assignment = f
            .source()
            .all_simplices()
            .filter(|s| s.dim() <= degree_cap)
            .map(|s| (s.clone(), Chain::simplex(s.clone()).push_forward(f, ring)))
            .collect();
        ChainMorphism {
            source: f.source().clone(),
            target: f.target().clone(),
            degree_cap,
            ring: ring.clone(),
            assignment,
        }
    }

    pub fn value(&self, s: &Simplex) -> Option<&Chain> {
        self.assignment.get(s)
    }

    /// Linear extension to an arbitrary chain of the source.
    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.dim());
        for (s, coef) in c.terms() {
            let v = self
                .assignment
                .get(s)
                .ok_or_else(|| Error::UnknownSimplex(format!("{s} has no assigned image")))?;
            if v.dim() != c.dim() {
                return Err(Error::DimensionMismatch(format!("image of {s} has dimension {}", v.dim())));
            }
            out = out.axpy(coef, v, &self.ring);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMorphism) -> Result<ChainMorphism> {
        if inner.target != self.source {
            return Err(Error::NotAChainMorphism("composition of mismatched morphisms".into()));
        }
        let cap = self.degree_cap.min(inner.degree_cap);
        let mut assignment = BTreeMap::new();
        for (s, c) in &inner.assignment {
            if s.dim() <= cap {
                assignment.insert(s.clone(), self.apply(c)?);
            }
        }
        Ok(ChainMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree_cap: cap,
            ring: self.ring.clone(),
            assignment,
        })
    }

    /// Restriction to a subcomplex of the source.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<ChainMorphism> {
        if !sub.is_subcomplex_of(&self.source) {
            return Err(Error::NotSubcomplex("restriction to a non-subcomplex".into()));
        }
        let assignment = self
            .assignment
            .iter()
            .filter(|(s, _)| sub.contains(s))
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect();
        Ok(ChainMorphism {
            source: sub.clone(),
            target: self.target.clone(),
            degree_cap: self.degree_cap,
            ring: self.ring.clone(),
            assignment,
        })
    }

    /// Union of carriers of the images of all faces of `s` (dimension capped).
    pub fn face_carrier(&self, s: &Simplex) -> VertexSet {
        let mut out = VertexSet::new();
        for f in s.all_faces() {
            if let Some(c) = self.assignment.get(&f) {
                out.extend(c.carrier_vertices());
            }
        }
        out
    }
}

/// A violated generator in a morphism or homotopy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub simplex: Simplex,
    pub reason: String,
}

/// Result of [`verify_chain_morphism`] or [`verify_homotopy`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LawReport {
    pub violations: Vec<Violation>,
    /// Cover member per source simplex, when a cover was supplied and fits.
    pub assignment: BTreeMap<Simplex, String>,
}

impl LawReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, s: &Simplex, reason: String) {
        self.violations.push(Violation { simplex: s.clone(), reason });
    }
}

/// Check `∂φ = φ∂` and `εφ_0 = ε` on every generator up to the degree cap.
pub fn verify_chain_morphism(phi: &ChainMorphism) -> LawReport {
    let ring = &phi.ring;
    let mut report = LawReport::default();
    for s in phi.source.all_simplices().filter(|s| s.dim() <= phi.degree_cap) {
        let Some(v) = phi.assignment.get(s) else {
            report.fail(s, "no image assigned".into());
            continue;
        };
        if v.dim() != s.dim() {
            report.fail(s, format!("image has dimension {}", v.dim()));
            continue;
        }
        if let Err(e) = v.check_in(&phi.target) {
            report.fail(s, e.to_string());
            continue;
        }
        if s.dim() == 0 {
            let e = v.augmentation(ring).expect("0-chain");
            if !ring.is_one(&e) {
                report.fail(s, format!("augmentation of the image is {e}, expected 1"));
            }
            continue;
        }
        let lhs = v.boundary(ring);
        match phi.apply(&Chain::simplex(s.clone()).boundary(ring)) {
            Ok(rhs) if rhs == lhs => {}
            Ok(rhs) => report.fail(s, format!("boundary of image {lhs} differs from image of boundary {rhs}")),
            Err(e) => report.fail(s, e.to_string()),
        }
    }
    report
}

/// Every vertex goes to `1 * [w]` for a single target vertex `w`.
pub fn is_correct(phi: &ChainMorphism) -> bool {
    phi.source.simplices(0).all(|v| {
        phi.assignment.get(v).is_some_and(|c| {
            c.len() == 1 && c.terms().values().all(|x| phi.ring.is_one(x))
        })
    })
}

/// Result of [`is_close`]: a member per source simplex, or the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closeness {
    pub assignment: BTreeMap<Simplex, String>,
    pub failure: Option<Simplex>,
}

impl Closeness {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// For every source simplex `σ` (up to the common degree cap), some member of
/// `cover` contains `|φ(τ)| ∪ |ψ(τ)|` for all faces `τ` of `σ`. The first
/// such member in cover order is recorded.
pub fn is_close(phi: &ChainMorphism, psi: &ChainMorphism, cover: &Cover) -> Result<Closeness> {
    if phi.source != psi.source || phi.target != psi.target {
        return Err(Error::NotAChainMorphism("closeness of morphisms with different complexes".into()));
    }
    if cover.vertices() != &phi.target.vertex_set() {
        return Err(Error::InvalidCover("closeness cover is not on the target".into()));
    }
    let cap = phi.degree_cap.min(psi.degree_cap);
    let mut assignment = BTreeMap::new();
    for s in phi.source.all_simplices().filter(|s| s.dim() <= cap) {
        let mut carrier = phi.face_carrier(s);
        carrier.extend(psi.face_carrier(s));
        match cover.first_containing(&carrier) {
            Some(i) => {
                assignment.insert(s.clone(), cover.members()[i].name.clone());
            }
            None => return Ok(Closeness { assignment, failure: Some(s.clone()) }),
        }
    }
    Ok(Closeness { assignment, failure: None })
}

/// `is_close(φ, φ, cover)`.
pub fn is_small(phi: &ChainMorphism, cover: &Cover) -> Result<Closeness> {
    is_close(phi, phi, cover)
}

/// A degree +1 family `D_k: C_k(source) -> C_{k+1}(target)`, `k <= degree_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub degree_cap: usize,
    pub ring: Ring,
    pub assignment: BTreeMap<Simplex, Chain>,
}

impl ChainHomotopy {
    pub fn zero(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        degree_cap: usize,
        ring: &Ring,
    ) -> Self {
        let assignment = source
            .all_simplices()
            .filter(|s| s.dim() <= degree_cap)
            .map(|s| (s.clone(), Chain::zero(s.dim() + 1)))
            .collect();
        ChainHomotopy {
            source: source.clone(),
            target: target.clone(),
            degree_cap,
            ring: ring.clone(),
            assignment,
        }
    }

    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.dim() + 1);
        for (s, coef) in c.terms() {
            let v = self
                .assignment
                .get(s)
                .ok_or_else(|| Error::UnknownSimplex(format!("{s} has no assigned homotopy value")))?;
            out = out.axpy(coef, v, &self.ring);
        }
        Ok(out)
    }
}

/// Check `∂D(σ) + D(∂σ) = φ(σ) - ψ(σ)` on every generator. With a cover,
/// also record for each `σ` a member containing `|D(τ)| ∪ |φ(τ)| ∪ |ψ(τ)|`
/// over all faces `τ`, reporting a violation where none exists.
pub fn verify_homotopy(
    d: &ChainHomotopy,
    phi: &ChainMorphism,
    psi: &ChainMorphism,
    cover: Option<&Cover>,
) -> LawReport {
    let ring = &d.ring;
    let mut report = LawReport::default();
    if phi.source != d.source || psi.source != d.source || phi.target != d.target || psi.target != d.target {
        report.violations.push(Violation {
            simplex: Simplex::vertex("?"),
            reason: "homotopy and morphisms have different complexes".into(),
        });
        return report;
    }
    for s in d.source.all_simplices().filter(|s| s.dim() <= d.degree_cap) {
        let Some(ds) = d.assignment.get(s) else {
            report.fail(s, "no homotopy value assigned".into());
            continue;
        };
        if ds.dim() != s.dim() + 1 {
            report.fail(s, format!("homotopy value has dimension {}", ds.dim()));
            continue;
        }
        if let Err(e) = ds.check_in(&d.target) {
            report.fail(s, e.to_string());
            continue;
        }
        let (Some(p), Some(q)) = (phi.assignment.get(s), psi.assignment.get(s)) else {
            report.fail(s, "morphism undefined on this generator".into());
            continue;
        };
        let mut lhs = ds.boundary(ring);
        if s.dim() > 0 {
            match d.apply(&Chain::simplex(s.clone()).boundary(ring)) {
                Ok(x) => lhs = lhs.add(&x, ring),
                Err(e) => {
                    report.fail(s, e.to_string());
                    continue;
                }
            }
        }
        let rhs = p.sub(q, ring);
        if lhs != rhs {
            report.fail(s, format!("∂D + D∂ = {lhs}, but φ - ψ = {rhs}"));
            continue;
        }
        if let Some(cover) = cover {
            let mut carrier = phi.face_carrier(s);
            carrier.extend(psi.face_carrier(s));
            for f in s.all_faces() {
                if let Some(c) = d.assignment.get(&f) {
                    carrier.extend(c.carrier_vertices());
                }
            }
            match cover.first_containing(&carrier) {
                Some(i) => {
                    report.assignment.insert(s.clone(), cover.members()[i].name.clone());
                }
                None => report.fail(s, "no cover member contains the homotopy carriers".into()),
            }
        }
    }
    report
}

/// `f_#` as a free function.
pub fn induced_morphism(f: &SimplicialMap, degree_cap: usize, ring: &Ring) -> ChainMorphism {
    ChainMorphism::induced(f, degree_cap, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z() -> Ring {
        Ring::Integers
    }

    fn s(v: &[&str]) -> Simplex {
        Simplex::new(v).unwrap()
    }

    #[test]
    fn boundary_of_an_edge() {
        let c = Chain::simplex(s(&["v0", "v1"]));
        let b = c.boundary(&z());
        assert_eq!(b.coefficient(&s(&["v1"])), int(1));
        assert_eq!(b.coefficient(&s(&["v0"])), int(-1));
        let t = Chain::simplex(s(&["v0", "v1", "v2"]));
        assert!(t.boundary(&z()).boundary(&z()).is_zero());
        let r2 = Ring::integers_mod(2).unwrap();
        let two = Chain::term(s(&["v0", "v1", "v2"]), int(2)).reduced(&r2);
        assert!(two.boundary(&r2).is_zero());
    }

    #[test]
    fn augmentation_examples() {
        let r5 = Ring::integers_mod(5).unwrap();
        let c = Chain::from_terms(0, &[(int(3), vec!["a"]), (int(2), vec!["b"])], &r5).unwrap();
        assert_eq!(c.augmentation(&r5).unwrap(), int(0));
        let d = Chain::simplex(s(&["v0", "v1"])).boundary(&z());
        assert_eq!(d.augmentation(&z()).unwrap(), int(0));
    }

    #[test]
    fn carriers_after_cancellation() {
        assert!(Chain::zero(1).carrier().is_empty());
        let c = Chain::from_terms(1, &[(int(1), vec!["a", "b"]), (int(1), vec!["b", "a"])], &z()).unwrap();
        assert!(c.carrier().is_empty());
        let e = Chain::simplex(s(&["v0", "v1"]));
        assert_eq!(e.carrier().len(), 3);
    }

    #[test]
    fn morphism_checks() {
        let k = SimplicialComplex::full_simplex(&["a", "b", "c"]).unwrap();
        let id = ChainMorphism::identity(&k, 2, &z());
        assert!(verify_chain_morphism(&id).passes());
        assert!(is_correct(&id));
        let mut bad = id.clone();
        bad.assignment.insert(s(&["a", "b"]), Chain::simplex(s(&["a", "c"])));
        let r = verify_chain_morphism(&bad);
        assert!(r.violations.iter().any(|v| v.simplex == s(&["a", "b"])));
        let mut twice = id.clone();
        twice.assignment.insert(s(&["a"]), Chain::term(s(&["a"]), int(2)));
        assert!(!is_correct(&twice));
    }

    #[test]
    fn induced_degenerate_and_sign() {
        let x = SimplicialComplex::full_simplex(&["a", "b"]).unwrap();
        let y = SimplicialComplex::full_simplex(&["p", "q", "v"]).unwrap();
        let collapse: BTreeMap<String, String> =
            [("a", "v"), ("b", "v")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let f = SimplicialMap::new(x.clone(), y.clone(), collapse).unwrap();
        let fs = induced_morphism(&f, 1, &z());
        assert!(fs.value(&s(&["a", "b"])).unwrap().is_zero());
        assert!(verify_chain_morphism(&fs).passes());
        let swap: BTreeMap<String, String> =
            [("a", "q"), ("b", "p")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let g = SimplicialMap::new(x, y, swap).unwrap();
        let gs = induced_morphism(&g, 1, &z());
        assert_eq!(gs.value(&s(&["a", "b"])).unwrap().coefficient(&s(&["p", "q"])), int(-1));
    }

    #[test]
    fn closeness_examples() {
        let h = SimplicialComplex::from_simplices(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        let id = ChainMorphism::identity(&h, 1, &z());
        let whole = Cover::whole(&h, "W").unwrap();
        assert!(is_close(&id, &id, &whole).unwrap().holds());
        let pairs = Cover::from_sets(&h, &[("A", vec!["a", "b"]), ("B", vec!["b", "c"]), ("C", vec!["a", "c"])])
            .unwrap();
        let shifted = {
            let mut m = id.clone();
            for (v, w) in [("a", "b"), ("b", "c"), ("c", "a")] {
                m.assignment.insert(s(&[v]), Chain::simplex(s(&[w])));
            }
            m
        };
        assert!(!is_close(&id, &shifted, &pairs).unwrap().holds());
    }

    #[test]
    fn zero_homotopy_between_equal_morphisms() {
        let k = SimplicialComplex::full_simplex(&["a", "b", "c"]).unwrap();
        let id = ChainMorphism::identity(&k, 1, &z());
        let d = ChainHomotopy::zero(&k, &k, 1, &z());
        assert!(verify_homotopy(&d, &id, &id, None).passes());
    }
}
