//! Seeded random problem instances for `gen-instance`.
//!
//! Every family produces a problem file ready for one command; the command
//! and its arguments are recorded in `command_args`.

use std::collections::BTreeMap;

use chaincert_core::complexes::{CoverMember, VertexSet};
use chaincert_core::uvn::check_uvn_map;
use chaincert_core::{ChainMorphism, Cover, FiltrationTower, Ring, Simplex, SimplicialComplex, SimplicialMap};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::format::{NamedMap, NamedMorphism, NamedTower, Problem, ProblemFile};
use crate::Family;

/// The problem file for `family` at `seed`. Same inputs, same bytes.
pub fn instance(family: Family, seed: u64) -> ProblemFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = match family {
        Family::Realization => realization(&mut rng),
        Family::Uvn => uvn(&mut rng),
        Family::Prism => prism(&mut rng),
        Family::Obstruction => obstruction(&mut rng),
    };
    p.to_file()
}

fn complex(facets: &[Vec<String>]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(facets).expect("generated simplices are valid")
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random complex on `vertices` with facets of dimension at most `max_dim`.
fn random_complex(rng: &mut ChaCha8Rng, vertices: &[String], max_dim: usize, facets: usize) -> SimplicialComplex {
    let mut simplices: Vec<Vec<String>> = vertices.iter().map(|v| vec![v.clone()]).collect();
    for _ in 0..facets {
        let d = rng.random_range(1..=max_dim.min(vertices.len() - 1).max(1));
        let mut pick: Vec<String> = vertices.choose_multiple(rng, d + 1).cloned().collect();
        pick.sort();
        simplices.push(pick);
    }
    complex(&simplices)
}

fn cone(base: &SimplicialComplex, apex: &str) -> SimplicialComplex {
    let mut facets: Vec<Vec<String>> = base
        .facets()
        .iter()
        .map(|s| {
            let mut v = s.vertices().to_vec();
            v.push(apex.to_string());
            v
        })
        .collect();
    facets.push(vec![apex.to_string()]);
    complex(&facets)
}

/// A `2 x len` strip of squares, each cut along the same diagonal.
fn strip(len: usize) -> SimplicialComplex {
    let v = |r: usize, c: usize| format!("g{r}{c}");
    let mut facets = Vec::new();
    for c in 0..len {
        for r in 0..1 {
            facets.push(vec![v(r, c), v(r + 1, c), v(r + 1, c + 1)]);
            facets.push(vec![v(r, c), v(r, c + 1), v(r + 1, c + 1)]);
        }
    }
    complex(&facets)
}

/// Cycle graph on `len >= 3` vertices.
fn polygon(prefix: &str, len: usize) -> SimplicialComplex {
    let v = names(prefix, len);
    let facets: Vec<Vec<String>> = (0..len).map(|i| vec![v[i].clone(), v[(i + 1) % len].clone()]).collect();
    complex(&facets)
}

/// Boundary of the full simplex on `vertices`.
fn sphere(vertices: &[String]) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..vertices.len())
        .map(|i| vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect())
        .collect();
    complex(&facets)
}

/// Fiber vertex `i` over `y`.
fn over(y: &str, i: usize) -> String {
    format!("{y}.{i}")
}

/// Every vertex set whose image is a simplex of `y`, up to dimension `cap`
/// (raised to `dim y` so the projection stays surjective), with `sizes[v]`
/// vertices over `v`. Preimages of full subcomplexes are homotopy equivalent
/// to them through dimension `cap - 1`.
fn fat(y: &SimplicialComplex, sizes: &BTreeMap<String, usize>, cap: usize) -> (SimplicialComplex, SimplicialMap) {
    let cap = cap.max(y.dim().unwrap_or(0));
    let mut x = SimplicialComplex::new(Vec::<String>::new(), &[] as &[Vec<String>]).expect("empty complex");
    for s in y.facets() {
        let verts: Vec<String> = s.vertices().iter().flat_map(|v| (0..sizes[v]).map(move |i| over(v, i))).collect();
        let block = SimplicialComplex::full_simplex(&verts).expect("distinct vertices").skeleton(cap);
        x = x.union(&block);
    }
    let assignment = x
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.rsplit_once('.').expect("fiber vertex").0.to_string()))
        .collect();
    let f = SimplicialMap::new(x.clone(), y.clone(), assignment).expect("projection is simplicial");
    (x, f)
}

fn random_sizes(rng: &mut ChaCha8Rng, y: &SimplicialComplex, max: usize) -> BTreeMap<String, usize> {
    y.vertices().iter().map(|v| (v.clone(), rng.random_range(1..=max))).collect()
}

/// `T_k` = balls of radius `3^k` about each vertex, `k = 0..=n+1`.
fn ball_tower(y: &SimplicialComplex, n: usize) -> (Vec<(String, Cover)>, FiltrationTower) {
    let mut levels = Vec::new();
    for k in 0..=n + 1 {
        let r = 3usize.pow(k as u32);
        let members = y
            .vertices()
            .iter()
            .map(|v| {
                let centre: VertexSet = [v.clone()].into_iter().collect();
                let vertices = y.edge_distances(&centre).into_iter().filter(|&(_, d)| d <= r).map(|(w, _)| w).collect();
                CoverMember { name: format!("B{k}_{v}"), vertices }
            })
            .collect();
        levels.push((format!("T{k}"), Cover::new(y, members).expect("balls cover")));
    }
    let tower = FiltrationTower::auto(levels.iter().map(|(_, c)| c.clone()).collect()).expect("balls nest");
    (levels, tower)
}

fn pick_ring(rng: &mut ChaCha8Rng) -> Ring {
    match rng.random_range(0..4) {
        0 => Ring::Rationals,
        1 => Ring::integers_mod(2).expect("modulus"),
        2 => Ring::integers_mod(3).expect("modulus"),
        _ => Ring::Integers,
    }
}

struct Builder {
    p: Problem,
}

impl Builder {
    fn new(ring: Ring) -> Builder {
        Builder {
            p: Problem {
                ring,
                complexes: BTreeMap::new(),
                maps: BTreeMap::new(),
                covers: BTreeMap::new(),
                towers: BTreeMap::new(),
                morphisms: BTreeMap::new(),
                homotopies: BTreeMap::new(),
                command_args: BTreeMap::new(),
            },
        }
    }

    fn complex(&mut self, name: &str, k: &SimplicialComplex) {
        self.p.complexes.insert(name.into(), k.clone());
    }

    fn map(&mut self, name: &str, source: &str, target: &str, f: &SimplicialMap) {
        let m = NamedMap { source: source.into(), target: target.into(), map: f.clone() };
        self.p.maps.insert(name.into(), m);
    }

    fn tower(&mut self, complex: &str, levels: Vec<(String, Cover)>, tower: FiltrationTower) {
        let names = levels.iter().map(|(n, _)| n.clone()).collect();
        for (name, cover) in levels {
            let c = crate::format::NamedCover { complex: complex.into(), cover };
            self.p.covers.insert(name, c);
        }
        self.p.towers.insert("tower".into(), NamedTower { levels: names, tower });
    }

    fn morphism(&mut self, name: &str, source: &str, target: &str, m: ChainMorphism) {
        let nm = NamedMorphism { source: source.into(), target: target.into(), morphism: m };
        self.p.morphisms.insert(name.into(), nm);
    }

    fn arg(&mut self, key: &str, value: impl Into<Value>) {
        self.p.command_args.insert(key.into(), value.into());
    }

    fn args(&mut self, command: &str, pairs: &[(&str, &str)]) {
        self.arg("command", command);
        for (k, v) in pairs {
            self.arg(k, *v);
        }
    }
}

/// A contractible target: a cone over a random base, or a strip.
fn contractible_target(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    if rng.random_bool(0.7) {
        let b = names("y", rng.random_range(2..=4));
        let facets = rng.random_range(1..=3);
        let base = random_complex(rng, &b, 2, facets);
        cone(&base, "o")
    } else {
        strip(rng.random_range(1..=3))
    }
}

/// A target that may have holes.
fn any_target(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    match rng.random_range(0..4) {
        0 => polygon("y", rng.random_range(3..=7)),
        1 => {
            let b = names("y", rng.random_range(3..=5));
            let facets = rng.random_range(2..=4);
            random_complex(rng, &b, 2, facets)
        }
        _ => contractible_target(rng),
    }
}

/// Random simplicial map from the vertices of `k` into `y`, greedily; falls
/// back to a constant map.
fn random_map(rng: &mut ChaCha8Rng, k: &SimplicialComplex, y: &SimplicialComplex) -> BTreeMap<String, String> {
    for _ in 0..20 {
        let mut g: BTreeMap<String, String> = BTreeMap::new();
        let mut ok = true;
        for v in k.vertices() {
            let mut candidates = y.vertices().to_vec();
            candidates.shuffle(rng);
            let found = candidates.into_iter().find(|c| {
                g.insert(v.clone(), c.clone());
                let fits = k.all_simplices().filter(|s| s.vertices().contains(v)).all(|s| {
                    let assigned: Vec<&String> = s.vertices().iter().filter_map(|u| g.get(u)).collect();
                    let image: Vec<&str> = assigned.iter().map(|s| s.as_str()).collect();
                    let mut image = image;
                    image.sort();
                    image.dedup();
                    Simplex::new(&image).is_some_and(|t| y.contains(&t))
                });
                g.remove(v);
                fits
            });
            match found {
                Some(c) => {
                    g.insert(v.clone(), c);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return g;
        }
    }
    let c = y.vertices()[0].clone();
    k.vertices().iter().map(|v| (v.clone(), c.clone())).collect()
}

/// `K` with dimension at most 3 and at most 40 simplices.
fn random_source(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    loop {
        let v = names("k", rng.random_range(2..=6));
        let max_dim = rng.random_range(1..=3);
        let facets = rng.random_range(1..=4);
        let k = random_complex(rng, &v, max_dim, facets);
        if k.len() <= 40 {
            return k;
        }
    }
}

/// A simplicial surjection with acyclic fibers, a ball tower on its target
/// that the map passes, and a partial realization on vertices and some edges.
fn realization(rng: &mut ChaCha8Rng) -> Problem {
    let ring = pick_ring(rng);
    let k = random_source(rng);
    let n = k.dim().unwrap_or(0).max(1) - 1;
    let (y, x, f, levels, tower) = loop {
        let y = contractible_target(rng);
        let sizes = random_sizes(rng, &y, 2);
        let (x, f) = fat(&y, &sizes, n + 1);
        let (levels, tower) = ball_tower(&y, n);
        if check_uvn_map(&f, &tower, n, &ring).is_ok_and(|r| r.holds()) {
            break (y, x, f, levels, tower);
        }
    };
    let g = random_map(rng, &k, &y);
    let lift: BTreeMap<String, String> = g
        .iter()
        .map(|(v, w)| {
            let fiber = f.fiber(w);
            (v.clone(), fiber.choose(rng).expect("surjective").clone())
        })
        .collect();
    let mut l_simplices: Vec<Vec<String>> = k.vertices().iter().map(|v| vec![v.clone()]).collect();
    for e in k.simplices(1) {
        if rng.random_bool(0.3) {
            l_simplices.push(e.vertices().to_vec());
        }
    }
    let l = SimplicialComplex::new(k.vertices(), &l_simplices).expect("edges of K");
    let l_lift: BTreeMap<String, String> = l.vertices().iter().map(|v| (v.clone(), lift[v].clone())).collect();
    let h = SimplicialMap::new(l.clone(), x.clone(), l_lift).expect("lift is simplicial");
    let phi_l = ChainMorphism::induced(&h, l.dim().unwrap_or(0), &ring);
    let mut b = Builder::new(ring);
    b.complex("K", &k);
    b.complex("L", &l);
    b.complex("X", &x);
    b.complex("Y", &y);
    b.map("f", "X", "Y", &f);
    b.tower("Y", levels, tower);
    b.morphism("phi_l", "L", "X", phi_l);
    b.args("extend-realization", &[("k", "K"), ("l", "L"), ("phi_l", "phi_l"), ("map", "f"), ("tower", "tower")]);
    b.arg("n", n);
    b.p
}

/// A fat map over a target that may have holes; fibers are sometimes cut
/// down to a skeleton too low to be acyclic. The map may or may not be UV^n.
fn uvn(rng: &mut ChaCha8Rng) -> Problem {
    let ring = pick_ring(rng);
    let n = rng.random_range(0..=1);
    let y = any_target(rng);
    let sizes = random_sizes(rng, &y, 3);
    let cap = if rng.random_bool(0.3) { n } else { n + 1 };
    let (x, f) = fat(&y, &sizes, cap.max(1));
    let (levels, tower) = ball_tower(&y, n);
    let mut b = Builder::new(ring);
    b.complex("X", &x);
    b.complex("Y", &y);
    b.map("f", "X", "Y", &f);
    b.tower("Y", levels, tower);
    b.args("check-uvn", &[("map", "f"), ("tower", "tower")]);
    b.arg("n", n);
    b.p
}

/// The prism over a path collapsing onto the path, with the identity of the
/// path to lift and a few vertices already lifted.
fn prism(rng: &mut ChaCha8Rng) -> Problem {
    let ring = pick_ring(rng);
    let len = rng.random_range(1..=4);
    let p = names("p", len + 1);
    let path = complex(&(0..len).map(|i| vec![p[i].clone(), p[i + 1].clone()]).collect::<Vec<_>>());
    let mut facets = Vec::new();
    for i in 0..len {
        facets.push(vec![over(&p[i], 0), over(&p[i], 1), over(&p[i + 1], 1)]);
        facets.push(vec![over(&p[i], 0), over(&p[i + 1], 0), over(&p[i + 1], 1)]);
    }
    let x = complex(&facets);
    let assignment = x.vertices().iter().map(|v| (v.clone(), v.rsplit_once('.').expect("fiber").0.into())).collect();
    let f = SimplicialMap::new(x.clone(), path.clone(), assignment).expect("projection");
    let (levels, tower) = ball_tower(&path, 0);
    let chosen: Vec<String> = p.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
    let l = SimplicialComplex::new(&chosen, &[] as &[Vec<String>]).expect("vertices");
    let lift = chosen.iter().map(|v| (v.clone(), over(v, rng.random_range(0..2)))).collect();
    let h = SimplicialMap::new(l.clone(), x.clone(), lift).expect("vertex map");
    let phi_l = ChainMorphism::induced(&h, 0, &ring);
    let phi = ChainMorphism::identity(&path, 1, &ring);
    let mut b = Builder::new(ring);
    b.complex("K", &path);
    b.complex("L", &l);
    b.complex("X", &x);
    b.map("f", "X", "K", &f);
    b.tower("K", levels, tower);
    b.morphism("phi_l", "L", "X", phi_l);
    b.morphism("phi", "K", "K", phi);
    b.args("lift", &[("k", "K"), ("l", "L"), ("phi_l", "phi_l"), ("phi", "phi"), ("map", "f"), ("tower", "tower")]);
    b.p
}

/// A partial realization of a `k`-sphere into a fat copy of itself, to be
/// extended over a cone or a full simplex. The fundamental class blocks it.
fn obstruction(rng: &mut ChaCha8Rng) -> Problem {
    let ring = pick_ring(rng);
    let dim = rng.random_range(1..=2);
    let (y, k) = if dim == 1 && rng.random_bool(0.5) {
        let y = polygon("y", rng.random_range(4..=6));
        let k = cone(&y, "o");
        (y, k)
    } else {
        let v = names("y", dim + 2);
        let y = sphere(&v);
        let k = if rng.random_bool(0.5) { SimplicialComplex::full_simplex(&v).expect("vertices") } else { cone(&y, "o") };
        (y, k)
    };
    let sizes = random_sizes(rng, &y, 2);
    let (x, f) = fat(&y, &sizes, dim + 1);
    let tower = FiltrationTower::trivial(&y, dim).expect("tower");
    let levels = vec![("whole".to_string(), tower.level(0).clone())];
    let mut l_simplices: Vec<Vec<String>> = y.facets().iter().map(|s| s.vertices().to_vec()).collect();
    l_simplices.extend(k.vertices().iter().map(|v| vec![v.clone()]));
    let l = SimplicialComplex::new(k.vertices(), &l_simplices).expect("subcomplex");
    let lift = l
        .vertices()
        .iter()
        .map(|v| (v.clone(), if v == "o" { over(&y.vertices()[0], 0) } else { over(v, 0) }))
        .collect();
    let h = SimplicialMap::new(l.clone(), x.clone(), lift).expect("lift is simplicial");
    let phi_l = ChainMorphism::induced(&h, l.dim().unwrap_or(0), &ring);
    let mut b = Builder::new(ring);
    b.complex("K", &k);
    b.complex("L", &l);
    b.complex("X", &x);
    b.complex("Y", &y);
    b.map("f", "X", "Y", &f);
    b.tower("Y", levels, tower);
    b.p.towers.get_mut("tower").expect("tower").levels = vec!["whole".into(); dim + 2];
    b.morphism("phi_l", "L", "X", phi_l);
    b.args("extend-realization", &[("k", "K"), ("l", "L"), ("phi_l", "phi_l"), ("map", "f"), ("tower", "tower")]);
    b.arg("n", dim);
    b.p
}

