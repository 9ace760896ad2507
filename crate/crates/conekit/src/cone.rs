//! Rational polyhedral cones in dual representation, Dirichlet fundamental
//! domains, and tiling verification.
//!
//! Cones are pointed and carry both extreme rays and a minimal facet list;
//! the two are kept mutually dual. Conversion runs the double description
//! method with incremental halfspace insertion and exact arithmetic; cone
//! dimensions here are small (at most about a dozen), so the per-insertion
//! adjacency recomputation is cheap.

use crate::error::{Error, Result};
use crate::isometry::{orbit_ball, GroupGens, Isometry, Word};
use crate::lattice::LorentzLattice;
use crate::mat::{self, Int, QMat, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    dim: usize,
    rays: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
}

/// Small bitset for tight-constraint bookkeeping inside double description.
#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

fn normalize_dirs(dim: usize, input: &[Vec<Rat>]) -> Result<Vec<Vec<Int>>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    for v in input {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        if mat::is_zero_vec(v) {
            return Err(Error::ZeroVector);
        }
        let p = mat::primitive_int(&mat::clear_denominators(v));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

fn int_rank(vecs: &[Vec<Int>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    QMat::from_int_rows(vecs).rank()
}

/// Extreme rays of { x : f . x >= 0 for all f }, which must be pointed
/// (the facet covectors span the whole space).
fn dd_rays(dim: usize, facets: &[Vec<Int>]) -> Vec<Vec<Int>> {
    assert_eq!(int_rank(facets), dim);
    // order the facets so that an independent set comes first
    let mut order: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<Int>> = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        if picked.len() < dim {
            picked.push(f.clone());
            if int_rank(&picked) == picked.len() {
                order.push(i);
                continue;
            }
            picked.pop();
        }
        rest.push(i);
    }
    assert_eq!(order.len(), dim);
    order.extend(rest);
    let ordered: Vec<&Vec<Int>> = order.iter().map(|&i| &facets[i]).collect();
    let m = ordered.len();

    // initial simplicial cone from the first dim facets
    let fb = QMat::from_int_rows(
        &ordered[..dim].iter().map(|f| (*f).clone()).collect::<Vec<_>>(),
    );
    let fb_inv = fb.inverse().expect("independent rows");
    struct Ray {
        v: Vec<Int>,
        tight: Bits,
    }
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..dim {
        let col = fb_inv.col(j);
        let v = mat::primitive_int(&mat::clear_denominators(&col));
        // f_j . v > 0 by construction of the inverse, up to a uniform sign
        let s = mat::idot(ordered[j], &v);
        let v = if s.is_negative() { mat::ineg(&v) } else { v };
        let mut tight = Bits::new(m);
        for (k, f) in ordered[..dim].iter().enumerate() {
            if mat::idot(f, &v).is_zero() {
                tight.set(k);
            }
        }
        rays.push(Ray { v, tight });
    }

    for k in dim..m {
        let f = ordered[k];
        let vals: Vec<Int> = rays.iter().map(|r| mat::idot(f, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.tight.set(k);
                }
            }
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for (pi, pv) in vals.iter().enumerate() {
            if !pv.is_positive() {
                continue;
            }
            for (ni, nv) in vals.iter().enumerate() {
                if !nv.is_negative() {
                    continue;
                }
                // combinatorial adjacency: no third ray is tight on the
                // common tight set of the pair
                let common = rays[pi].tight.and(&rays[ni].tight);
                let blocked = rays.iter().enumerate().any(|(ri, r)| {
                    ri != pi && ri != ni && common.is_subset_of(&r.tight)
                });
                if blocked {
                    continue;
                }
                let mut v: Vec<Int> = Vec::with_capacity(dim);
                for t in 0..dim {
                    v.push(pv.clone() * &rays[ni].v[t] - nv.clone() * &rays[pi].v[t]);
                }
                let v = mat::primitive_int(&v);
                let mut tight = Bits::new(m);
                for (idx, g) in ordered[..=k].iter().enumerate() {
                    if mat::idot(g, &v).is_zero() {
                        tight.set(idx);
                    }
                }
                new_rays.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            let mut r = r;
            if vals[i].is_zero() {
                r.tight.set(k);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// Minimal halfspace description of the cone generated by the given rays.
/// Works in any dimension; when the span is proper the description includes
/// both signs of a basis of the span's annihilator.
fn facet_hull_int(dim: usize, rays: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if rays.is_empty() {
        let mut out = Vec::new();
        for i in 0..dim {
            let mut e = vec![Int::zero(); dim];
            e[i] = mat::int(1);
            out.push(e.clone());
            out.push(mat::ineg(&e));
        }
        out.sort();
        return out;
    }
    let r = int_rank(rays);
    if r == dim {
        return dd_rays(dim, rays);
    }
    // proper span: work inside a saturated basis of it
    let cols: Vec<Vec<Int>> = rays.to_vec();
    let snf = mat::smith_normal_form(
        &(0..dim)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect::<Vec<_>>(),
    );
    let u = QMat::from_int_rows(&snf.u);
    let uinv = u.inverse().expect("unimodular");
    let basis: Vec<Vec<Int>> = (0..r)
        .map(|j| {
            mat::to_int_vec(&uinv.col(j)).expect("unimodular inverse is integral")
        })
        .collect();
    let bmat = QMat::from_int_rows(&basis).transpose();
    let coords: Vec<Vec<Int>> = rays
        .iter()
        .map(|ray| {
            let sol = bmat.solve(&mat::int_to_rat_vec(ray)).expect("ray in span");
            mat::to_int_vec(&sol).expect("saturated basis")
        })
        .collect();
    let inner = facet_hull_int(r, &coords);
    let ann = mat::integer_kernel(&basis);
    let mut out: Vec<Vec<Int>> = Vec::new();
    for k in &ann {
        out.push(k.clone());
        out.push(mat::ineg(k));
    }
    // lift inner facets to covectors vanishing on the annihilator directions
    let mut sys_rows: Vec<Vec<Rat>> = basis.iter().map(|b| mat::int_to_rat_vec(b)).collect();
    for k in &ann {
        sys_rows.push(mat::int_to_rat_vec(k));
    }
    let sys = QMat::from_rows(sys_rows);
    for phi in &inner {
        let mut rhs: Vec<Rat> = phi.iter().map(|x| Rat::from_integer(x.clone())).collect();
        rhs.extend(vec![Rat::zero(); ann.len()]);
        let f = sys.solve(&rhs).expect("positive definite splitting");
        out.push(mat::primitive_int(&mat::clear_denominators(&f)));
    }
    out.sort();
    out.dedup();
    out
}

impl PolyCone {
    /// Cone generated by the given ray representatives. Fails with NotPointed
    /// when the rays contain a line; `facet_hull` still applies then.
    pub fn from_rays(dim: usize, rays: &[Vec<Rat>]) -> Result<PolyCone> {
        let rs = normalize_dirs(dim, rays)?;
        let facets = facet_hull_int(dim, &rs);
        if int_rank(&facets) < dim {
            return Err(Error::NotPointed);
        }
        let canon = dd_rays(dim, &facets);
        Ok(PolyCone {
            dim,
            rays: canon,
            facets,
        })
    }

    /// Cone cut out by the given halfspace functionals. Fails with NotPointed
    /// when the functionals do not span the dual space.
    pub fn from_facets(dim: usize, facets: &[Vec<Rat>]) -> Result<PolyCone> {
        let fs = normalize_dirs(dim, facets)?;
        if int_rank(&fs) < dim {
            return Err(Error::NotPointed);
        }
        let rays = dd_rays(dim, &fs);
        let minimal = facet_hull_int(dim, &rays);
        Ok(PolyCone {
            dim,
            rays,
            facets: minimal,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self
                .facets
                .iter()
                .all(|f| !mat::dot(&mat::int_to_rat_vec(f), x).is_negative())
    }

    pub fn strictly_contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self
                .facets
                .iter()
                .all(|f| mat::dot(&mat::int_to_rat_vec(f), x).is_positive())
    }

    /// The face obtained by intersecting with the kernels of the given
    /// functionals, each of which must be nonnegative on the cone.
    pub fn face(&self, functionals: &[Vec<Rat>]) -> Result<PolyCone> {
        let mut tight: Vec<usize> = (0..self.rays.len()).collect();
        for (idx, f) in functionals.iter().enumerate() {
            if f.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: f.len(),
                });
            }
            for r in &self.rays {
                if mat::dot(f, &mat::int_to_rat_vec(r)).is_negative() {
                    return Err(Error::NotSupporting { index: idx });
                }
            }
            tight.retain(|&i| mat::dot(f, &mat::int_to_rat_vec(&self.rays[i])).is_zero());
        }
        let kept: Vec<Vec<Rat>> = tight
            .iter()
            .map(|&i| mat::int_to_rat_vec(&self.rays[i]))
            .collect();
        PolyCone::from_rays(self.dim, &kept)
    }
}

/// Halfspace form of the cone generated by the rays, available even when the
/// cone is not pointed.
pub fn facet_hull(dim: usize, rays: &[Vec<Rat>]) -> Result<Vec<Vec<Int>>> {
    let rs = normalize_dirs(dim, rays)?;
    Ok(facet_hull_int(dim, &rs))
}

/// The region a Dirichlet construction is carried out in. The full positive
/// cone is round, so it contributes no facets; membership is checked through
/// the form instead.
#[derive(Clone, Debug)]
pub enum Ambient {
    PositiveCone,
    Cone(PolyCone),
}

impl Ambient {
    fn facet_covectors(&self) -> Vec<Vec<Rat>> {
        match self {
            Ambient::PositiveCone => Vec::new(),
            Ambient::Cone(c) => c.facets().iter().map(|f| mat::int_to_rat_vec(f)).collect(),
        }
    }

    fn admits(&self, lat: &LorentzLattice, x: &[Rat]) -> bool {
        match self {
            Ambient::PositiveCone => lat.in_closed_positive_cone(x),
            Ambient::Cone(c) => c.contains(x),
        }
    }

    fn admits_interior(&self, lat: &LorentzLattice, x: &[Rat]) -> bool {
        match self {
            Ambient::PositiveCone => lat.in_positive_cone(x),
            Ambient::Cone(c) => c.strictly_contains(x),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirichletOutcome {
    pub domain: PolyCone,
    /// Primitive representative of the basepoint ray.
    pub basepoint: Vec<Int>,
    /// Orbit points (beyond the basepoint) whose bisectors were intersected.
    pub orbit_used: usize,
    /// True when the orbit ball was complete for the stated bound, so no
    /// group element inside that ball is missing from the cut.
    pub certified: bool,
    /// Extreme rays on the light cone: the rational boundary points.
    pub boundary_rational_rays: Vec<Vec<Int>>,
    /// Whether every extreme ray lies in the closed positive cone; if not,
    /// the bound was too small for the domain to close up inside it.
    pub inside_positive_cone: bool,
    /// For each facet, the words of the orbit elements whose bisector
    /// realizes it (empty for ambient facets).
    pub facet_words: Vec<(Vec<Int>, Vec<String>)>,
}

/// Exact Dirichlet fundamental domain of the basepoint's orbit: the ambient
/// region cut by the halfspaces { x : <x, gy - y> >= 0 } over the orbit ball.
/// The bisectors are linear because g preserves the norm of y.
pub fn dirichlet_domain(
    lat: &LorentzLattice,
    gens: &GroupGens,
    y: &[Rat],
    ambient: &Ambient,
    cosh_sq_bound: &Rat,
    max_elements: usize,
) -> Result<DirichletOutcome> {
    lat.check_dim(y)?;
    if !ambient.admits_interior(lat, y) || !lat.in_positive_cone(y) {
        return Err(Error::NotInteriorPoint);
    }
    let ball = orbit_ball(lat, gens, y, cosh_sq_bound, max_elements)?;
    if let Some(w) = ball.stabilizer_witness {
        return Err(Error::StabilizerNontrivial {
            word: w.to_string(),
        });
    }
    let base = lat.primitive(y)?;
    let mut sources: BTreeMap<Vec<Int>, Vec<String>> = BTreeMap::new();
    let mut halfspaces: Vec<Vec<Rat>> = Vec::new();
    for f in ambient.facet_covectors() {
        let key = mat::primitive_int(&mat::clear_denominators(&f));
        sources.entry(key).or_default();
        halfspaces.push(f);
    }
    let mut orbit_used = 0;
    for p in &ball.points {
        if p.word.is_empty() {
            continue;
        }
        orbit_used += 1;
        let gy = p.element.apply(y);
        let f = lat.covector(&mat::vsub(&gy, y));
        debug_assert!(mat::dot(&f, y).is_positive());
        let key = mat::primitive_int(&mat::clear_denominators(&f));
        sources.entry(key).or_default().push(p.word.to_string());
        halfspaces.push(f);
    }
    let domain = PolyCone::from_facets(lat.rank(), &halfspaces)?;
    let mut boundary = Vec::new();
    let mut inside = true;
    for r in domain.rays() {
        let rq = mat::int_to_rat_vec(r);
        let q = lat.norm(&rq);
        if q.is_negative() || !lat.ample_pairing(&rq).is_positive() {
            inside = false;
        } else if q.is_zero() {
            boundary.push(r.clone());
        }
    }
    let facet_words: Vec<(Vec<Int>, Vec<String>)> = domain
        .facets()
        .iter()
        .map(|f| {
            let words = sources.get(f).cloned().unwrap_or_default();
            (f.clone(), words)
        })
        .collect();
    Ok(DirichletOutcome {
        domain,
        basepoint: base,
        orbit_used,
        certified: ball.complete,
        boundary_rational_rays: boundary,
        inside_positive_cone: inside,
        facet_words,
    })
}

#[derive(Clone, Debug)]
pub struct TileSample {
    pub sample: Vec<Rat>,
    /// Shortest word g with g^-1 . sample inside the domain, if any.
    pub word: Option<Word>,
    /// Number of word-ball elements whose translate of the domain contains
    /// the sample. 1 for generic points, 2 or more on shared boundaries.
    pub multiplicity: usize,
    /// Number of word-ball elements whose translate contains the sample
    /// strictly; more than one would mean two tiles share interior.
    pub interior_multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct TileReport {
    pub samples: Vec<TileSample>,
    pub all_covered: bool,
    pub multiplicity_one: usize,
    /// Samples strictly interior to two different translates; always 0 for a
    /// genuine fundamental domain.
    pub interior_conflicts: usize,
    pub ball_elements: usize,
    pub ball_complete: bool,
}

/// Checks that the group translates of the domain tile the ambient region:
/// every sample must be carried into the domain by some element of the word
/// ball, and generic samples by exactly one.
pub fn tile_check(
    lat: &LorentzLattice,
    gens: &GroupGens,
    domain: &PolyCone,
    ambient: &Ambient,
    basepoint: &[Rat],
    samples: &[Vec<Rat>],
    word_len_max: usize,
    max_elements: usize,
) -> Result<TileReport> {
    lat.check_dim(basepoint)?;
    if !lat.in_positive_cone(basepoint) {
        return Err(Error::NotInteriorPoint);
    }
    // depth-limited element ball, deduplicated by the image of the basepoint
    let signed = gens.signed();
    let mut seen: BTreeMap<Vec<Int>, ()> = BTreeMap::new();
    let mut elements: Vec<(Word, Isometry, Isometry)> = Vec::new();
    let id = Isometry::identity(lat);
    seen.insert(lat.primitive(basepoint)?, ());
    elements.push((Word::identity(), id.clone(), id));
    let mut frontier: Vec<usize> = vec![0];
    let mut complete = true;
    'bfs: for _depth in 0..word_len_max {
        let mut next = Vec::new();
        for &i in &frontier {
            let (w, g, _) = elements[i].clone();
            for (label, s) in &signed {
                let elem = s.compose(&g);
                let image = lat.primitive(&elem.apply(basepoint))?;
                if seen.contains_key(&image) {
                    continue;
                }
                if elements.len() >= max_elements {
                    complete = false;
                    break 'bfs;
                }
                seen.insert(image, ());
                let inv = elem.inverse();
                elements.push((w.prepend(*label), elem, inv));
                next.push(elements.len() - 1);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out = Vec::with_capacity(samples.len());
    let mut all_covered = true;
    let mut mult_one = 0;
    let mut conflicts = 0;
    for s in samples {
        lat.check_dim(s)?;
        let mut word = None;
        let mut mult = 0;
        let mut interior = 0;
        for (w, _, ginv) in &elements {
            let moved = ginv.apply(s);
            if domain.contains(&moved) && ambient.admits(lat, &moved) {
                mult += 1;
                if word.is_none() {
                    word = Some(w.clone());
                }
                if domain.strictly_contains(&moved) {
                    interior += 1;
                }
            }
        }
        if mult == 0 {
            all_covered = false;
        }
        if mult == 1 {
            mult_one += 1;
        }
        if interior > 1 {
            conflicts += 1;
        }
        out.push(TileSample {
            sample: s.clone(),
            word,
            multiplicity: mult,
            interior_multiplicity: interior,
        });
    }
    Ok(TileReport {
        samples: out,
        all_covered,
        multiplicity_one: mult_one,
        interior_conflicts: conflicts,
        ball_elements: elements.len(),
        ball_complete: complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{ivec, rat, rvec};
    use crate::sampling::Sampler;

    #[test]
    fn first_quadrant_is_self_dual() {
        let c = PolyCone::from_rays(2, &[rvec(&[1, 0]), rvec(&[0, 1])]).unwrap();
        assert_eq!(c.rays(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
        assert_eq!(c.facets(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
        assert!(c.contains(&rvec(&[3, 5])));
        assert!(!c.contains(&rvec(&[-1, 5])));
    }

    #[test]
    fn single_ray_needs_span_cutting_facets() {
        let c = PolyCone::from_rays(2, &[rvec(&[1, 0])]).unwrap();
        assert_eq!(c.rays(), &[ivec(&[1, 0])]);
        assert_eq!(
            c.facets(),
            &[ivec(&[0, -1]), ivec(&[0, 1]), ivec(&[1, 0])]
        );
        assert!(c.contains(&rvec(&[2, 0])));
        assert!(!c.contains(&rvec(&[2, 1])));
        assert!(!c.contains(&rvec(&[-1, 0])));
    }

    #[test]
    fn line_input_reports_not_pointed_but_keeps_halfspaces() {
        let rays = [rvec(&[1, 0]), rvec(&[-1, 0])];
        assert!(matches!(
            PolyCone::from_rays(2, &rays),
            Err(Error::NotPointed)
        ));
        let hs = facet_hull(2, &rays).unwrap();
        assert_eq!(hs, vec![ivec(&[0, -1]), ivec(&[0, 1])]);
        assert!(matches!(
            PolyCone::from_facets(2, &hs.iter().map(|f| mat::int_to_rat_vec(f)).collect::<Vec<_>>()),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn facet_pruning_drops_redundant_halfspaces() {
        // x >= 0, y >= 0, x + y >= 0 (last is implied)
        let c = PolyCone::from_facets(2, &[rvec(&[1, 0]), rvec(&[0, 1]), rvec(&[1, 1])]).unwrap();
        assert_eq!(c.facets(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
        // degenerate pair cutting a half-line
        let c = PolyCone::from_facets(2, &[rvec(&[0, 1]), rvec(&[0, -1]), rvec(&[1, 0])]).unwrap();
        assert_eq!(c.rays(), &[ivec(&[1, 0])]);
    }

    #[test]
    fn zero_cone_from_opposite_halfspaces() {
        let c = PolyCone::from_facets(
            2,
            &[rvec(&[1, 0]), rvec(&[-1, 0]), rvec(&[0, 1]), rvec(&[0, -1])],
        )
        .unwrap();
        assert!(c.rays().is_empty());
        assert!(c.contains(&rvec(&[0, 0])));
        assert!(!c.contains(&rvec(&[1, 0])));
    }

    #[test]
    fn duality_roundtrip_on_random_simplicial_cones() {
        let mut s = Sampler::new(41);
        for dim in 2..=4 {
            for _ in 0..30 {
                let rays: Vec<Vec<Rat>> = (0..dim)
                    .map(|_| (0..dim).map(|_| rat(s.int_in(-5, 5))).collect())
                    .collect();
                let rmat = QMat::from_rows(rays.clone());
                if rmat.rank() < dim {
                    continue;
                }
                let c = PolyCone::from_rays(dim, &rays).unwrap();
                // every ray satisfies every facet
                for r in c.rays() {
                    for f in c.facets() {
                        assert!(!mat::idot(f, r).is_negative());
                    }
                }
                // mutual duality: rebuilding from either side reproduces both
                let from_f = PolyCone::from_facets(
                    dim,
                    &c.facets().iter().map(|f| mat::int_to_rat_vec(f)).collect::<Vec<_>>(),
                )
                .unwrap();
                assert_eq!(&from_f, &c);
                // membership agrees with the generator solve on the simplicial cone
                let tr = rmat.transpose();
                for _ in 0..10 {
                    let x: Vec<Rat> = (0..dim).map(|_| rat(s.int_in(-6, 6))).collect();
                    let coords = tr.solve(&x).unwrap();
                    let inside = coords.iter().all(|c| !c.is_negative());
                    assert_eq!(c.contains(&x), inside);
                }
            }
        }
    }

    #[test]
    fn face_of_the_rank_two_light_cone() {
        let lat = LorentzLattice::from_i64(&[&[1, 0], &[0, -1]], &[1, 0]).unwrap();
        let c = PolyCone::from_rays(2, &[rvec(&[1, 1]), rvec(&[1, -1])]).unwrap();
        let f = c.face(&[lat.covector(&rvec(&[1, 1]))]).unwrap();
        assert_eq!(f.rays(), &[ivec(&[1, 1])]);
        // a functional with mixed signs on the rays is rejected
        let bad = lat.covector(&rvec(&[0, 1]));
        assert!(matches!(
            c.face(&[bad]),
            Err(Error::NotSupporting { index: 0 })
        ));
        // the zero face
        let f0 = c
            .face(&[lat.covector(&rvec(&[1, 1])), lat.covector(&rvec(&[1, -1]))])
            .unwrap();
        assert!(f0.rays().is_empty());
    }

    fn pell() -> (LorentzLattice, GroupGens) {
        let lat = LorentzLattice::from_i64(&[&[1, 0], &[0, -2]], &[1, 0]).unwrap();
        let g = Isometry::from_i64(&lat, &[&[3, 4], &[2, 3]]).unwrap();
        let gens = GroupGens::new(&lat, vec![g]).unwrap();
        (lat, gens)
    }

    #[test]
    fn pell_dirichlet_domain_is_the_expected_wedge() {
        let (lat, gens) = pell();
        let y = rvec(&[1, 0]);
        let out =
            dirichlet_domain(&lat, &gens, &y, &Ambient::PositiveCone, &rat(400), 100).unwrap();
        assert!(out.certified);
        assert!(out.inside_positive_cone);
        assert_eq!(out.orbit_used, 4);
        assert_eq!(out.basepoint, ivec(&[1, 0]));
        // bisectors to (3,2) and (3,-2) cut the wedge; the squares are redundant
        assert_eq!(out.domain.facets(), &[ivec(&[1, -2]), ivec(&[1, 2])]);
        assert_eq!(out.domain.rays(), &[ivec(&[2, -1]), ivec(&[2, 1])]);
        // no rational light-cone rays for this form
        assert!(out.boundary_rational_rays.is_empty());
        // facet words recorded
        for (_, words) in &out.facet_words {
            assert_eq!(words.len(), 1);
        }
        // basepoint strictly inside
        assert!(out.domain.strictly_contains(&y));
    }

    #[test]
    fn dirichlet_rejects_stabilized_basepoints() {
        let lat =
            LorentzLattice::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]], &[1, 0, 0]).unwrap();
        let r = Isometry::from_i64(&lat, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]).unwrap();
        let gens = GroupGens::new(&lat, vec![r]).unwrap();
        let out = dirichlet_domain(
            &lat,
            &gens,
            &rvec(&[2, 1, 0]),
            &Ambient::PositiveCone,
            &rat(100),
            50,
        );
        assert!(matches!(out, Err(Error::StabilizerNontrivial { .. })));
    }

    #[test]
    fn pell_tiles_cover_samples_once() {
        let (lat, gens) = pell();
        let y = rvec(&[1, 0]);
        let out =
            dirichlet_domain(&lat, &gens, &y, &Ambient::PositiveCone, &rat(400), 100).unwrap();
        // samples: positive combinations of nearby orbit points
        let ball = orbit_ball(&lat, &gens, &y, &rat(100000), 40).unwrap();
        let pts: Vec<Vec<Int>> = ball.points.iter().map(|p| p.point.clone()).collect();
        let mut s = Sampler::new(97);
        let samples: Vec<Vec<Rat>> = (0..50)
            .map(|_| loop {
                let x = s.positive_combination(&pts);
                if lat.in_positive_cone(&x) {
                    break x;
                }
            })
            .collect();
        let report = tile_check(
            &lat,
            &gens,
            &out.domain,
            &Ambient::PositiveCone,
            &y,
            &samples,
            12,
            200,
        )
        .unwrap();
        assert!(report.all_covered);
        assert_eq!(report.multiplicity_one, samples.len());
        assert_eq!(report.interior_conflicts, 0);
        // a point on a shared facet is seen twice
        let gy = rvec(&[3, 2]);
        let boundary = mat::vadd(&y, &gy);
        let report = tile_check(
            &lat,
            &gens,
            &out.domain,
            &Ambient::PositiveCone,
            &y,
            &[boundary],
            12,
            200,
        )
        .unwrap();
        assert_eq!(report.samples[0].multiplicity, 2);
    }
}
