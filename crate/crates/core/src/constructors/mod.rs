//! Constructive procedures: realization extension, approximate lifting,
//! relative homotopy construction, Dugundji-type extension and nerve
//! factorization.
//!
//! Every construction climbs a [`FiltrationTower`] the same way. A simplex
//! `σ` of dimension `k + 1` first gets a member `W` of `T_0` containing the
//! images of everything already known about its faces. Following refinement
//! witnesses from `W` up to `T_k` gives a member `M`; the pair recorded for `M`
//! has an inner set `V ⊇ St(M, T_k)` that carries the cycle to be filled, and
//! the filling happens in the preimage of its outer member `U ∈ T_{k+1}`.

mod dugundji;
mod homotopy;
mod lift;
mod nerve_factor;
mod realization;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::Chain;
use crate::coefficients::Ring;
use crate::complexes::{FiltrationTower, Simplex, SimplicialComplex, SimplicialMap, TowerDefect, VertexSet};
use crate::homology::CycleFiller;
use crate::Error;

pub use dugundji::{dugundji_extend, DugundjiCertificate, NearestAssignment};
pub use homotopy::{build_homotopy, HomotopyCertificate, HomotopyProblem};
pub use lift::{approximate_lift, LiftCertificate, LiftProblem};
pub use nerve_factor::{nerve_factorization, theta, NerveFactorization};
pub use realization::{extend_realization, ExtensionCertificate, RealizationProblem};

/// A cycle that could not be filled where the tower said it should be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// The simplex whose value was being constructed.
    pub simplex: Simplex,
    /// The cycle that does not bound.
    pub cycle: Chain,
    /// Tower level of the pair used.
    pub level: usize,
    pub pair: String,
    /// Name of the outer member whose preimage was searched.
    pub member: String,
    /// The preimage subcomplex in which the cycle does not bound.
    pub subcomplex: SimplicialComplex,
}

/// Failure of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    NotFillable(Box<Obstruction>),
    Precondition(String),
    TowerDefect(Vec<TowerDefect>),
    CloseFail(String),
    EmptyA,
    NoCanonicalAssignment(String),
    NotSimplicial(String),
    Core(Error),
}

impl From<Error> for ConstructError {
    fn from(e: Error) -> Self {
        ConstructError::Core(e)
    }
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NotFillable(o) => write!(
                f,
                "cycle {} for simplex {} does not bound in the preimage of {} (level {}, pair {})",
                o.cycle, o.simplex, o.member, o.level, o.pair
            ),
            ConstructError::Precondition(s) => write!(f, "precondition failed: {s}"),
            ConstructError::TowerDefect(d) => {
                write!(f, "tower defects:")?;
                for x in d {
                    write!(f, " {x};")?;
                }
                Ok(())
            }
            ConstructError::CloseFail(s) => write!(f, "closeness failed: {s}"),
            ConstructError::EmptyA => f.write_str("the subcomplex A is empty"),
            ConstructError::NoCanonicalAssignment(s) => write!(f, "no canonical assignment: {s}"),
            ConstructError::NotSimplicial(s) => write!(f, "not simplicial: {s}"),
            ConstructError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub type ConstructResult<T> = core::result::Result<T, ConstructError>;

/// Where a constructed value was filled: the level `k + 1` member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillRecord {
    pub simplex: Simplex,
    pub cycle: Chain,
    pub level: usize,
    pub pair: String,
    pub member: String,
    pub solution: Chain,
}

/// A cover member chosen for a simplex: level and name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LevelMember {
    pub level: usize,
    pub member: String,
}

/// Tower climbing and cached fillers for one map and one tower.
pub(crate) struct Ladder<'a> {
    f: &'a SimplicialMap,
    tower: &'a FiltrationTower,
    ring: &'a Ring,
    fillers: BTreeMap<(usize, usize), CycleFiller>,
}

impl<'a> Ladder<'a> {
    pub fn new(f: &'a SimplicialMap, tower: &'a FiltrationTower, ring: &'a Ring) -> ConstructResult<Self> {
        if tower.level(0).vertices() != &f.target().vertex_set() {
            return Err(ConstructError::Precondition("tower is not on the target of the map".into()));
        }
        let defects = tower.defects();
        if !defects.is_empty() {
            return Err(ConstructError::TowerDefect(defects));
        }
        Ok(Ladder { f, tower, ring, fillers: BTreeMap::new() })
    }

    pub fn tower(&self) -> &FiltrationTower {
        self.tower
    }

    /// First `T_0` member containing the image of `carrier`.
    pub fn base_member(&self, carrier: &VertexSet) -> Option<usize> {
        self.tower.level(0).first_containing(&self.f.image_vertices(carrier))
    }

    /// Follow witnesses from `T_0` member `w` to level `k` and take its pair.
    pub fn locate(&self, w: usize, k: usize) -> usize {
        let path = self.tower.chase(w, k);
        self.tower.witness(k, path[k])
    }

    pub fn member_name(&self, level: usize, i: usize) -> String {
        self.tower.level(level).members()[i].name.clone()
    }

    /// Fill the `k`-cycle `c` through the pair `pair` of level `k`. The carrier
    /// of `c` must map into the pair's inner set.
    pub fn fill(&mut self, simplex: &Simplex, c: &Chain, k: usize, pair: usize) -> ConstructResult<FillRecord> {
        let p = &self.tower.pairs(k)[pair];
        let image = self.f.image_vertices(&c.carrier_vertices());
        if !image.is_subset(&p.inner) {
            return Err(ConstructError::Precondition(format!(
                "carrier of the cycle for {simplex} leaves the inner set of pair {} at level {k}",
                p.name
            )));
        }
        let outer = p.outer;
        let member = self.member_name(k + 1, outer);
        let f = self.f;
        let tower = self.tower;
        let ring = self.ring;
        let filler = self.fillers.entry((k, outer)).or_insert_with(|| {
            let verts = f.preimage_vertices(&tower.level(k + 1).members()[outer].vertices);
            CycleFiller::new(&f.source().full_subcomplex(&verts), k, ring)
        });
        match filler.fill(c)? {
            Some(solution) => Ok(FillRecord {
                simplex: simplex.clone(),
                cycle: c.clone(),
                level: k,
                pair: p.name.clone(),
                member,
                solution,
            }),
            None => Err(ConstructError::NotFillable(Box::new(Obstruction {
                simplex: simplex.clone(),
                cycle: c.clone(),
                level: k,
                pair: p.name.clone(),
                member,
                subcomplex: filler.complex().clone(),
            }))),
        }
    }
}
