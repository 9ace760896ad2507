//! Intersection theory on the Picard lattice of a surface: effectivity via
//! the Euler characteristic, Zariski decomposition with its negativity
//! solver, enumeration of (-1)-classes and their types, fiber translations,
//! and the polyhedrality classifier.
//!
//! Geometric facts the lattice alone cannot certify (rationality, effectivity
//! of -nK, fibration multiplicities, which curves lie in fibers) are declared
//! by the fixture and validated where a check exists.

use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::isometry::{parabolic_map, Isometry};
use crate::lattice::LorentzLattice;
use crate::mat::{self, Int, QMat, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct Curve {
    pub name: String,
    pub class: Vec<Int>,
    pub in_fiber: bool,
}

#[derive(Clone, Debug)]
pub struct Fibration {
    /// Isotropic nef fiber class direction.
    pub p: Vec<Int>,
    /// Multiplier of p in the relation lattice of the section group.
    pub a: i64,
    /// Fiber degree multiplier; translations are parabolic around b*p.
    pub b: i64,
}

#[derive(Clone, Debug, Default)]
pub struct Declares {
    pub rational_surface: bool,
    pub anti_k_effective: bool,
    /// K plus the boundary is numerically trivial with coefficients in [0,1).
    pub klt_calabi_yau: bool,
    pub fibration: Option<Fibration>,
    /// -K written as nonnegative coefficients over the curve list, when the
    /// fixture supports running anticanonical divisors by name.
    pub anti_k_coeffs: Option<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct SurfaceData {
    lattice: LorentzLattice,
    k: Vec<Int>,
    delta: Vec<(usize, Rat)>,
    curves: Vec<Curve>,
    declares: Declares,
}

impl SurfaceData {
    pub fn new(
        lattice: LorentzLattice,
        k: Vec<Int>,
        delta: Vec<(usize, Rat)>,
        curves: Vec<Curve>,
        declares: Declares,
    ) -> Result<Self> {
        let n = lattice.rank();
        if k.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: k.len(),
            });
        }
        for c in &curves {
            if c.class.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.class.len(),
                });
            }
        }
        let one = Rat::one();
        for (i, coeff) in &delta {
            if *i >= curves.len() {
                return Err(Error::Malformed(format!(
                    "boundary refers to curve {i} but only {} are listed",
                    curves.len()
                )));
            }
            if coeff.is_negative() || *coeff >= one {
                return Err(Error::Malformed(
                    "boundary coefficients must lie in [0, 1)".into(),
                ));
            }
        }
        let s = SurfaceData {
            lattice,
            k,
            delta,
            curves,
            declares,
        };
        if s.declares.klt_calabi_yau {
            let mut total = mat::int_to_rat_vec(&s.k);
            for (i, coeff) in &s.delta {
                total = mat::vadd(&total, &mat::vscale(coeff, &s.curve_class(*i)));
            }
            if !mat::is_zero_vec(&total) {
                return Err(Error::Inconsistent(
                    "canonical class plus boundary is not numerically trivial".into(),
                ));
            }
        }
        if let Some(f) = &s.declares.fibration {
            if f.p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.p.len(),
                });
            }
            let pq = mat::int_to_rat_vec(&f.p);
            if !s.lattice.norm(&pq).is_zero() {
                return Err(Error::NotIsotropic);
            }
            if !s.lattice.in_closed_positive_cone(&pq) {
                return Err(Error::OutsidePositiveCone);
            }
            if f.a < 1 || f.b < 1 {
                return Err(Error::Malformed(
                    "fibration multiplicities must be positive".into(),
                ));
            }
        }
        if let Some(coeffs) = &s.declares.anti_k_coeffs {
            if coeffs.len() != s.curves.len() {
                return Err(Error::DimensionMismatch {
                    expected: s.curves.len(),
                    got: coeffs.len(),
                });
            }
            if coeffs.iter().any(|c| c.is_negative()) {
                return Err(Error::NotEffective);
            }
            let total = s.class_from_coeffs(coeffs);
            let negk = s.neg_k();
            if total != negk {
                return Err(Error::Inconsistent(
                    "declared anticanonical coefficients do not sum to -K".into(),
                ));
            }
        }
        Ok(s)
    }

    pub fn lattice(&self) -> &LorentzLattice {
        &self.lattice
    }

    pub fn k(&self) -> &[Int] {
        &self.k
    }

    pub fn neg_k(&self) -> Vec<Rat> {
        mat::int_to_rat_vec(&mat::ineg(&self.k))
    }

    pub fn delta(&self) -> &[(usize, Rat)] {
        &self.delta
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn declares(&self) -> &Declares {
        &self.declares
    }

    pub fn curve_class(&self, i: usize) -> Vec<Rat> {
        mat::int_to_rat_vec(&self.curves[i].class)
    }

    pub fn class_from_coeffs(&self, coeffs: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.lattice.rank()];
        for (c, curve) in coeffs.iter().zip(&self.curves) {
            out = mat::vadd(&out, &mat::vscale(c, &mat::int_to_rat_vec(&curve.class)));
        }
        out
    }

    /// First listed curve the class pairs negatively with, if any.
    pub fn nef_violation(&self, x: &[Rat]) -> Option<&str> {
        self.curves
            .iter()
            .find(|c| {
                self.lattice
                    .pairing(x, &mat::int_to_rat_vec(&c.class))
                    .is_negative()
            })
            .map(|c| c.name.as_str())
    }
}

/// chi(L) = (L^2 + L.(-K))/2 + 1, valid on rational surfaces.
pub fn riemann_roch_chi(s: &SurfaceData, l: &[Rat]) -> Result<Rat> {
    s.lattice.check_dim(l)?;
    if mat::to_int_vec(l).is_none() {
        return Err(Error::NonIntegral);
    }
    if !s.declares.rational_surface {
        return Err(Error::Inconsistent(
            "Euler characteristic formula needs a declared rational surface".into(),
        ));
    }
    let two = mat::rat(2);
    Ok((s.lattice.norm(l) + s.lattice.pairing(l, &s.neg_k())) / two + Rat::one())
}

/// A nef class on a rational surface with effective -nK is effective; the
/// witness is chi(L) >= 1. Returns (chi >= 1, chi).
pub fn nef_is_effective(s: &SurfaceData, l: &[Rat]) -> Result<(bool, Rat)> {
    if !s.declares.anti_k_effective {
        return Err(Error::Inconsistent(
            "effectivity argument needs declared effective -nK".into(),
        ));
    }
    if let Some(name) = s.nef_violation(l) {
        return Err(Error::NotNefAgainstList(name.to_string()));
    }
    let chi = riemann_roch_chi(s, l)?;
    Ok((chi >= Rat::one(), chi))
}

#[derive(Clone, Debug)]
pub struct NegativityOutcome {
    pub coeffs: Vec<Rat>,
    /// Connected components of the support's dual graph, as curve indices.
    pub components: Vec<Vec<usize>>,
    /// Whether the positive-coefficient curves form a union of components.
    pub support_is_component_union: bool,
}

/// Solves sum_i a_i N_i . N_j = target_j on a negative definite support of
/// pairwise-nonnegative curves. With nonpositive targets the solution is
/// automatically nonnegative and supported on whole dual-graph components;
/// both facts are asserted.
pub fn negativity_solve(
    s: &SurfaceData,
    support: &[usize],
    targets: &[Rat],
) -> Result<NegativityOutcome> {
    if targets.len() != support.len() {
        return Err(Error::DimensionMismatch {
            expected: support.len(),
            got: targets.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for &i in support {
        if i >= s.curves.len() || !seen.insert(i) {
            return Err(Error::Malformed(format!("bad support index {i}")));
        }
    }
    let k = support.len();
    let classes: Vec<Vec<Rat>> = support.iter().map(|&i| s.curve_class(i)).collect();
    let mut g = QMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = s.lattice.pairing(&classes[i], &classes[j]);
            if i != j && v.is_negative() {
                return Err(Error::Inconsistent(
                    "distinct curves in a configuration cannot pair negatively".into(),
                ));
            }
            g.set(i, j, v);
        }
    }
    if k > 0 && mat::ldl_negdef(&g).is_none() {
        return Err(Error::NotNegativeDefinite);
    }
    let coeffs = if k == 0 {
        Vec::new()
    } else {
        g.solve(&targets.to_vec())
            .expect("negative definite grams are invertible")
    };
    // dual-graph components
    let mut comp_of = vec![usize::MAX; k];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut comp = Vec::new();
        comp_of[start] = id;
        while let Some(i) = stack.pop() {
            comp.push(support[i]);
            for j in 0..k {
                if comp_of[j] == usize::MAX && !g.at(i, j).is_zero() {
                    comp_of[j] = id;
                    stack.push(j);
                }
            }
        }
        comp.sort();
        components.push(comp);
    }
    let mut union_ok = true;
    for comp in &components {
        let vals: Vec<&Rat> = comp
            .iter()
            .map(|ci| &coeffs[support.iter().position(|x| x == ci).unwrap()])
            .collect();
        let pos = vals.iter().filter(|v| v.is_positive()).count();
        if pos != 0 && pos != vals.len() {
            union_ok = false;
        }
    }
    if targets.iter().all(|t| !t.is_positive()) {
        assert!(
            coeffs.iter().all(|a| !a.is_negative()),
            "nonpositive targets must give nonnegative coefficients"
        );
        assert!(union_ok, "support must be a union of dual-graph components");
    }
    Ok(NegativityOutcome {
        coeffs,
        components,
        support_is_component_union: union_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomp {
    pub p: Vec<Rat>,
    pub n_support: Vec<usize>,
    pub n_coeffs: Vec<Rat>,
}

impl ZariskiDecomp {
    pub fn n_class(&self, s: &SurfaceData) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); s.lattice().rank()];
        for (i, a) in self.n_support.iter().zip(&self.n_coeffs) {
            out = mat::vadd(&out, &mat::vscale(a, &s.curve_class(*i)));
        }
        out
    }
}

/// Zariski decomposition of D = sum coeffs_i C_i by iterative support
/// enlargement: as long as P = D - N pairs negatively with a support curve,
/// that curve joins N and the coefficients are re-solved so that P.N_j = 0.
/// The support only grows, so the loop terminates; the result is the unique
/// decomposition and does not depend on curve order.
pub fn zariski_decompose(s: &SurfaceData, coeffs: &[Rat]) -> Result<ZariskiDecomp> {
    if coeffs.len() != s.curves.len() {
        return Err(Error::DimensionMismatch {
            expected: s.curves.len(),
            got: coeffs.len(),
        });
    }
    if coeffs.iter().any(|c| c.is_negative()) {
        return Err(Error::NotEffective);
    }
    let d = s.class_from_coeffs(coeffs);
    let pool: Vec<usize> = (0..coeffs.len())
        .filter(|&i| coeffs[i].is_positive())
        .collect();
    let mut support: BTreeSet<usize> = BTreeSet::new();
    let mut n_coeffs: Vec<Rat> = Vec::new();
    loop {
        let sup: Vec<usize> = support.iter().copied().collect();
        let mut n = vec![Rat::zero(); s.lattice.rank()];
        for (i, a) in sup.iter().zip(&n_coeffs) {
            n = mat::vadd(&n, &mat::vscale(a, &s.curve_class(*i)));
        }
        let p = mat::vsub(&d, &n);
        let grow: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|i| {
                !support.contains(i)
                    && s.lattice.pairing(&p, &s.curve_class(*i)).is_negative()
            })
            .collect();
        if grow.is_empty() {
            // done growing; validate against the whole list
            if let Some(name) = s.nef_violation(&p) {
                return Err(Error::Inconsistent(format!(
                    "divisor admits no decomposition: positive part stays negative on {name:?}"
                )));
            }
            let mut kept_support = Vec::new();
            let mut kept_coeffs = Vec::new();
            for (i, a) in sup.iter().zip(&n_coeffs) {
                if a.is_negative() {
                    return Err(Error::Inconsistent(
                        "negative part acquired a negative coefficient".into(),
                    ));
                }
                if a.is_positive() {
                    kept_support.push(*i);
                    kept_coeffs.push(a.clone());
                }
            }
            return Ok(ZariskiDecomp {
                p,
                n_support: kept_support,
                n_coeffs: kept_coeffs,
            });
        }
        support.extend(grow);
        let sup: Vec<usize> = support.iter().copied().collect();
        let targets: Vec<Rat> = sup
            .iter()
            .map(|&i| s.lattice.pairing(&d, &s.curve_class(i)))
            .collect();
        n_coeffs = negativity_solve(s, &sup, &targets)?.coeffs;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IitakaCase {
    Zero,
    One,
    Two,
}

/// Trichotomy of the positive part: Two when P^2 > 0, One when P^2 = 0 and
/// P is nonzero, Zero when P vanishes.
pub fn iitaka_case(s: &SurfaceData, z: &ZariskiDecomp) -> Result<IitakaCase> {
    let q = s.lattice.norm(&z.p);
    if q.is_positive() {
        Ok(IitakaCase::Two)
    } else if q.is_zero() {
        if mat::is_zero_vec(&z.p) {
            Ok(IitakaCase::Zero)
        } else {
            Ok(IitakaCase::One)
        }
    } else {
        Err(Error::Inconsistent(
            "positive part has negative self-intersection".into(),
        ))
    }
}

#[derive(Clone, Debug)]
pub struct MinusOneClasses {
    /// Sorted by degree against the reference ample class, then by
    /// coordinates.
    pub classes: Vec<Vec<Int>>,
    /// No class with degree within the bound was missed.
    pub complete: bool,
    /// The whole solution set was enumerated and nothing exists beyond the
    /// bound (the orthogonal complement of K is negative definite, or the
    /// defining equations are globally infeasible).
    pub globally_complete: bool,
}

/// All integer points of a negative definite quadric shifted by a rational
/// vector: { c integral : q(c + m) = radius } for q given in squared form.
fn shifted_lattice_points(
    d: &[Rat],
    l: &[Vec<Rat>],
    m: &[Rat],
    radius: Rat,
    cap: usize,
    cap_hit: &mut bool,
) -> Vec<Vec<Int>> {
    let mut found = Vec::new();
    if radius.is_positive() {
        return found;
    }
    if d.is_empty() {
        if radius.is_zero() {
            found.push(Vec::new());
        }
        return found;
    }
    let mut c = vec![Int::zero(); d.len()];
    rec_points(d, l, m, d.len() - 1, radius, &mut c, &mut found, cap, cap_hit);
    found
}

#[allow(clippy::too_many_arguments)]
fn rec_points(
    d: &[Rat],
    l: &[Vec<Rat>],
    m: &[Rat],
    i: usize,
    rem: Rat,
    c: &mut Vec<Int>,
    found: &mut Vec<Vec<Int>>,
    cap: usize,
    cap_hit: &mut bool,
) {
    if *cap_hit {
        return;
    }
    let mut off = m[i].clone();
    for j in i + 1..d.len() {
        off += l[i][j].clone() * (Rat::from_integer(c[j].clone()) + m[j].clone());
    }
    // d_i (c_i + off)^2 >= rem, so |c_i + off| <= sqrt(rem / d_i)
    let bound = &rem / &d[i];
    let neg_off = -off.clone();
    let lo = mat::ceil_minus_sqrt(&neg_off, &bound);
    let hi = mat::floor_plus_sqrt(&neg_off, &bound);
    let mut ci = lo;
    while ci <= hi {
        let w = Rat::from_integer(ci.clone()) + off.clone();
        let rem2 = &rem - &(&d[i] * &w) * &w;
        c[i] = ci.clone();
        if i == 0 {
            if rem2.is_zero() {
                found.push(c.clone());
                if found.len() >= cap {
                    *cap_hit = true;
                    return;
                }
            }
        } else {
            rec_points(d, l, m, i - 1, rem2, c, found, cap, cap_hit);
            if *cap_hit {
                return;
            }
        }
        ci += 1;
    }
}

struct Slice {
    w: Vec<Vec<Int>>,
    gw: QMat,
    d: Vec<Rat>,
    l: Vec<Vec<Rat>>,
}

impl Slice {
    /// Kernel-of-constraints setup; None when the form on the kernel is not
    /// negative definite (then slices are not finite).
    fn new(lat: &LorentzLattice, constraints: &[Vec<Int>]) -> Option<Slice> {
        let w = mat::integer_kernel(constraints);
        let k = w.len();
        let mut gw = QMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gw.set(
                    i,
                    j,
                    lat.pairing(&mat::int_to_rat_vec(&w[i]), &mat::int_to_rat_vec(&w[j])),
                );
            }
        }
        if k == 0 {
            return Some(Slice {
                w,
                gw,
                d: Vec::new(),
                l: Vec::new(),
            });
        }
        let (d, l) = mat::ldl_negdef(&gw)?;
        Some(Slice { w, gw, d, l })
    }

    /// Integer solutions of q(x0 + W c) = -1 mapped back to the lattice.
    fn norm_minus_one(
        &self,
        lat: &LorentzLattice,
        x0: &[Int],
        cap: usize,
        cap_hit: &mut bool,
    ) -> Vec<Vec<Int>> {
        let x0q = mat::int_to_rat_vec(x0);
        let q0 = lat.norm(&x0q);
        if self.w.is_empty() {
            return if q0 == -Rat::one() {
                vec![x0.to_vec()]
            } else {
                Vec::new()
            };
        }
        let lin: Vec<Rat> = self
            .w
            .iter()
            .map(|wi| lat.pairing(&mat::int_to_rat_vec(wi), &x0q))
            .collect();
        let m = self.gw.solve(&lin).expect("definite form");
        let radius = mat::dot(&m, &lin) - q0 - Rat::one();
        let sols = shifted_lattice_points(&self.d, &self.l, &m, radius, cap, cap_hit);
        sols.iter()
            .map(|c| {
                let mut e = x0.to_vec();
                for (ci, wi) in c.iter().zip(&self.w) {
                    for t in 0..e.len() {
                        e[t] += ci * &wi[t];
                    }
                }
                e
            })
            .collect()
    }
}

/// Enumerates integral classes E with E^2 = -1, K.E = -1 and ample degree in
/// (0, degree_bound]. When K's orthogonal complement is negative definite the
/// full solution set is finite and enumerated outright; otherwise each degree
/// slice under the ample functional is a finite definite problem, solved
/// degree by degree.
pub fn minus_one_classes(
    s: &SurfaceData,
    degree_bound: i64,
    max_classes: usize,
) -> Result<MinusOneClasses> {
    let lat = s.lattice();
    let minus_one = vec![-Int::one()];
    let kq = mat::int_to_rat_vec(&s.k);
    let kappa = mat::to_int_vec(&lat.covector(&kq)).expect("integral gram");
    let empty_all = |globally: bool| MinusOneClasses {
        classes: Vec::new(),
        complete: true,
        globally_complete: globally,
    };
    if mat::is_zero_ivec(&kappa) || mat::integral_solution(&[kappa.clone()], &minus_one).is_none()
    {
        // K.E = -1 has no integral solution at all
        return Ok(empty_all(true));
    }
    let bound = Rat::from_integer(Int::from(degree_bound));
    let mut cap_hit = false;
    let mut classes: Vec<Vec<Int>>;
    let mut globally = false;
    if let Some(slice) = Slice::new(lat, &[kappa.clone()]) {
        // finite global solution set
        let x0 = mat::integral_solution(&[kappa.clone()], &minus_one).unwrap();
        let all = slice.norm_minus_one(lat, &x0, max_classes, &mut cap_hit);
        classes = all
            .into_iter()
            .filter(|e| {
                let deg = lat.ample_pairing(&mat::int_to_rat_vec(e));
                deg.is_positive() && deg <= bound
            })
            .collect();
        globally = !cap_hit;
    } else {
        let acov = lat.covector(lat.ample());
        let alpha = mat::primitive_int(&mat::clear_denominators(&acov));
        let i0 = alpha.iter().position(|x| !x.is_zero()).unwrap();
        let mu = &acov[i0] / Rat::from_integer(alpha[i0].clone());
        debug_assert!(mu.is_positive());
        let rows = vec![kappa.clone(), alpha.clone()];
        let slice = Slice::new(lat, &rows)
            .expect("kernel transverse to the ample direction is negative definite");
        classes = Vec::new();
        let t_max = (&bound / &mu).floor().to_integer();
        let mut t = Int::one();
        while t <= t_max && !cap_hit {
            if let Some(x0) = mat::integral_solution(&rows, &[-Int::one(), t.clone()]) {
                let room = max_classes - classes.len();
                let sols = slice.norm_minus_one(lat, &x0, room, &mut cap_hit);
                classes.extend(sols);
            }
            t += 1;
        }
    }
    for e in &classes {
        let eq = mat::int_to_rat_vec(e);
        debug_assert_eq!(lat.norm(&eq), -Rat::one());
        debug_assert_eq!(lat.pairing(&eq, &kq), -Rat::one());
    }
    classes.sort_by(|a, b| {
        let da = lat.ample_pairing(&mat::int_to_rat_vec(a));
        let db = lat.ample_pairing(&mat::int_to_rat_vec(b));
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(MinusOneClasses {
        classes,
        complete: !cap_hit,
        globally_complete: globally && !cap_hit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveType {
    /// Intersection numbers with the negative-part components.
    pub lambdas: Vec<i64>,
}

/// All lambda in N^r with sum a_i lambda_i = 1, where a are the (positive)
/// negative-part coefficients; finite, in lexicographic order.
pub fn curve_types(s: &SurfaceData, z: &ZariskiDecomp) -> Result<Vec<CurveType>> {
    let _ = s;
    if z.n_coeffs.is_empty() {
        return Err(Error::Inconsistent(
            "type enumeration needs a nonempty negative part".into(),
        ));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; z.n_coeffs.len()];
    fn rec(a: &[Rat], i: usize, rem: Rat, cur: &mut Vec<i64>, out: &mut Vec<CurveType>) {
        if i + 1 == a.len() {
            // last slot must absorb the exact remainder
            let q = rem / a[i].clone();
            if q.is_integer() && !q.is_negative() {
                cur[i] = q.to_integer().to_i64().expect("small type entries");
                out.push(CurveType {
                    lambdas: cur.clone(),
                });
            }
            return;
        }
        let top = (rem.clone() / a[i].clone()).floor().to_integer();
        let mut v = Int::zero();
        while v <= top {
            cur[i] = v.to_i64().expect("small type entries");
            let used = a[i].clone() * Rat::from_integer(v.clone());
            rec(a, i + 1, rem.clone() - used, cur, out);
            v += 1;
        }
    }
    rec(&z.n_coeffs, 0, Rat::one(), &mut cur, &mut out);
    Ok(out)
}

/// Translation by a section class x: the parabolic isometry around e = b p.
/// Requires x orthogonal to the fiber direction and to every declared fiber
/// component.
pub fn mordell_weil_action(s: &SurfaceData, x: &[Rat]) -> Result<Isometry> {
    let fib = s.declares.fibration.as_ref().ok_or(Error::NoFibration)?;
    let e = mat::vscale(
        &mat::rat(fib.b),
        &mat::int_to_rat_vec(&fib.p),
    );
    for c in &s.curves {
        if c.in_fiber && !s.lattice.pairing(x, &mat::int_to_rat_vec(&c.class)).is_zero() {
            return Err(Error::NotOrthogonal);
        }
    }
    parabolic_map(&s.lattice, &e, x)
}

#[derive(Clone, Debug)]
pub struct MwGroupData {
    pub rank: usize,
    /// Nontrivial invariant factors of the quotient.
    pub torsion: Vec<Int>,
    /// Lattice representatives of a basis of the free part; valid inputs for
    /// the translation action when no reducible fibers are declared.
    pub representatives: Vec<Vec<Int>>,
}

/// The section group P-perp / (aP, fiber components), computed by Smith
/// reduction of the relation matrix in a saturated basis of P-perp.
pub fn mordell_weil_group_data(s: &SurfaceData) -> Result<MwGroupData> {
    let fib = s.declares.fibration.as_ref().ok_or(Error::NoFibration)?;
    let lat = s.lattice();
    let pq = mat::int_to_rat_vec(&fib.p);
    if !lat.norm(&pq).is_zero() {
        return Err(Error::NotIsotropic);
    }
    let kappa_p = mat::to_int_vec(&lat.covector(&pq)).expect("integral gram");
    let w = mat::integer_kernel(&[kappa_p]);
    let k = w.len();
    let bmat = QMat::from_int_rows(&w).transpose();
    let coords = |target: &[Rat]| -> Result<Vec<Int>> {
        let sol = bmat.solve(&target.to_vec()).ok_or(Error::NotOrthogonal)?;
        mat::to_int_vec(&sol).ok_or(Error::NonIntegral)
    };
    let mut rels: Vec<Vec<Int>> = Vec::new();
    rels.push(coords(&mat::vscale(&mat::rat(fib.a), &pq))?);
    for c in &s.curves {
        if !c.in_fiber {
            continue;
        }
        let cq = mat::int_to_rat_vec(&c.class);
        if !lat.pairing(&cq, &pq).is_zero() {
            return Err(Error::NotOrthogonal);
        }
        rels.push(coords(&cq)?);
    }
    let rmat: Vec<Vec<Int>> = (0..k)
        .map(|i| rels.iter().map(|r| r[i].clone()).collect())
        .collect();
    let snf = mat::smith_normal_form(&rmat);
    let torsion: Vec<Int> = (0..snf.rank)
        .map(|i| snf.d[i][i].clone())
        .filter(|d| d > &Int::one())
        .collect();
    let u = QMat::from_int_rows(&snf.u);
    let uinv = u.inverse().expect("unimodular");
    let mut representatives = Vec::new();
    for j in snf.rank..k {
        let col = mat::to_int_vec(&uinv.col(j)).expect("unimodular inverse is integral");
        let mut rep = vec![Int::zero(); lat.rank()];
        for (ci, wi) in col.iter().zip(&w) {
            for t in 0..rep.len() {
                rep[t] += ci * &wi[t];
            }
        }
        representatives.push(rep);
    }
    Ok(MwGroupData {
        rank: k - snf.rank,
        torsion,
        representatives,
    })
}

/// The chamber spanned by the fiber direction p together with the face of
/// the nef cone orthogonal to a section class e.
pub fn chamber_cone(
    s: &SurfaceData,
    p: &[Rat],
    e: &[Rat],
    nef_cone: &PolyCone,
) -> Result<PolyCone> {
    let lat = s.lattice();
    if !lat.pairing(e, p).is_positive() {
        return Err(Error::Inconsistent(
            "class pairs to zero with the fiber direction (lies in the fibers)".into(),
        ));
    }
    let face = nef_cone.face(&[lat.covector(e)])?;
    let mut rays: Vec<Vec<Rat>> = face.rays().iter().map(|r| mat::int_to_rat_vec(r)).collect();
    rays.push(p.to_vec());
    PolyCone::from_rays(lat.rank(), &rays)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    PolyhedralCertified,
    NotPolyhedralWithinBound,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub verdict: Verdict,
    /// Which sufficient condition was checked, and the Calabi-Yau status.
    pub checked: String,
    /// Negative-class counts per degree bound (empty for the rank shortcut).
    pub counts: Vec<(i64, usize)>,
}

/// Semi-decision of nef-cone polyhedrality: certify via Picard rank at most
/// 2 or via a globally complete negative-class enumeration with K^2 > 0;
/// refute within the bound when class counts keep strictly growing.
pub fn classify_cone(
    s: &SurfaceData,
    bounds: &[i64],
    max_classes: usize,
) -> Result<ClassifyReport> {
    if bounds.len() < 2 || bounds.windows(2).any(|w| w[0] >= w[1]) || bounds[0] < 1 {
        return Err(Error::Malformed(
            "need at least two strictly increasing positive degree bounds".into(),
        ));
    }
    let cy = if s.declares.klt_calabi_yau {
        "klt Calabi-Yau pair declared and verified"
    } else {
        "no klt Calabi-Yau pair declared"
    };
    if s.lattice.rank() <= 2 {
        return Ok(ClassifyReport {
            verdict: Verdict::PolyhedralCertified,
            checked: format!("{cy}; Picard rank {} is at most 2", s.lattice.rank()),
            counts: Vec::new(),
        });
    }
    let top = *bounds.last().unwrap();
    let enumerated = minus_one_classes(s, top, max_classes)?;
    let counts: Vec<(i64, usize)> = bounds
        .iter()
        .map(|&b| {
            let bq = mat::rat(b);
            let c = enumerated
                .classes
                .iter()
                .filter(|e| s.lattice.ample_pairing(&mat::int_to_rat_vec(e)) <= bq)
                .count();
            (b, c)
        })
        .collect();
    let kq = mat::int_to_rat_vec(&s.k);
    if enumerated.globally_complete && s.lattice.norm(&kq).is_positive() {
        return Ok(ClassifyReport {
            verdict: Verdict::PolyhedralCertified,
            checked: format!(
                "{cy}; K-orthogonal complement negative definite and all {} negative classes enumerated",
                enumerated.classes.len()
            ),
            counts,
        });
    }
    let growing = enumerated.complete
        && counts.windows(2).all(|w| w[0].1 < w[1].1);
    if growing {
        return Ok(ClassifyReport {
            verdict: Verdict::NotPolyhedralWithinBound,
            checked: format!(
                "{cy}; negative-class count strictly increases across the degree bounds"
            ),
            counts,
        });
    }
    Ok(ClassifyReport {
        verdict: Verdict::Inconclusive,
        checked: format!("{cy}; neither certificate applied within the bounds"),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{int, ivec, rat, ratio, rvec};
    use crate::sampling::Sampler;

    fn chain_surface() -> SurfaceData {
        // basis (F, C): F a fiber class, C a (-2)-curve meeting it once
        let lat = LorentzLattice::from_i64(&[&[0, 1], &[1, -2]], &[3, 1]).unwrap();
        SurfaceData::new(
            lat,
            ivec(&[-2, -1]),
            vec![],
            vec![
                Curve {
                    name: "F".into(),
                    class: ivec(&[1, 0]),
                    in_fiber: false,
                },
                Curve {
                    name: "C".into(),
                    class: ivec(&[0, 1]),
                    in_fiber: false,
                },
            ],
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                anti_k_coeffs: Some(vec![rat(2), rat(1)]),
                ..Declares::default()
            },
        )
        .unwrap()
    }

    fn del_pezzo_surface(r: usize) -> SurfaceData {
        let mut gram: Vec<Vec<i64>> = vec![];
        for i in 0..=r {
            let mut row = vec![0i64; r + 1];
            row[i] = if i == 0 { 1 } else { -1 };
            gram.push(row);
        }
        let gram_refs: Vec<&[i64]> = gram.iter().map(|r| r.as_slice()).collect();
        let mut ample = vec![3i64];
        ample.extend(vec![-1i64; r]);
        let lat = LorentzLattice::from_i64(&gram_refs, &ample).unwrap();
        let mut k = vec![int(-3)];
        k.extend(vec![Int::one(); r]);
        let mut curves = Vec::new();
        for i in 1..=r {
            let mut class = vec![Int::zero(); r + 1];
            class[i] = Int::one();
            curves.push(Curve {
                name: format!("e{i}"),
                class,
                in_fiber: false,
            });
        }
        let negk: Vec<Int> = k.iter().map(|x| -x).collect();
        curves.push(Curve {
            name: "anticanonical-a".into(),
            class: negk.clone(),
            in_fiber: false,
        });
        curves.push(Curve {
            name: "anticanonical-b".into(),
            class: negk,
            in_fiber: false,
        });
        let na = curves.len() - 2;
        let mut anti = vec![Rat::zero(); curves.len()];
        anti[na] = Rat::one();
        SurfaceData::new(
            lat,
            k,
            vec![(na, ratio(1, 2)), (na + 1, ratio(1, 2))],
            curves,
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                klt_calabi_yau: true,
                anti_k_coeffs: Some(anti),
                ..Declares::default()
            },
        )
        .unwrap()
    }

    fn blowup_nine_surface(fibration: bool) -> SurfaceData {
        let gram: Vec<Vec<i64>> = (0..10)
            .map(|i| {
                let mut row = vec![0i64; 10];
                row[i] = if i == 0 { 1 } else { -1 };
                row
            })
            .collect();
        let gram_refs: Vec<&[i64]> = gram.iter().map(|r| r.as_slice()).collect();
        let mut ample = vec![4i64];
        ample.extend(vec![-1i64; 9]);
        let lat = LorentzLattice::from_i64(&gram_refs, &ample).unwrap();
        let mut k = vec![int(-3)];
        k.extend(vec![Int::one(); 9]);
        let negk: Vec<Int> = k.iter().map(|x| -x).collect();
        let mut curves: Vec<Curve> = (1..=9)
            .map(|i| {
                let mut class = vec![Int::zero(); 10];
                class[i] = Int::one();
                Curve {
                    name: format!("e{i}"),
                    class,
                    in_fiber: false,
                }
            })
            .collect();
        let (delta, declares) = if fibration {
            curves.push(Curve {
                name: "half-fiber-a".into(),
                class: negk.clone(),
                in_fiber: true,
            });
            curves.push(Curve {
                name: "half-fiber-b".into(),
                class: negk.clone(),
                in_fiber: true,
            });
            let mut anti = vec![Rat::zero(); curves.len()];
            anti[9] = Rat::one();
            (
                vec![(9, ratio(1, 2)), (10, ratio(1, 2))],
                Declares {
                    rational_surface: true,
                    anti_k_effective: true,
                    klt_calabi_yau: true,
                    fibration: Some(Fibration {
                        p: negk.clone(),
                        a: 1,
                        b: 1,
                    }),
                    anti_k_coeffs: Some(anti),
                },
            )
        } else {
            curves.push(Curve {
                name: "cubic".into(),
                class: negk.clone(),
                in_fiber: false,
            });
            let mut anti = vec![Rat::zero(); curves.len()];
            anti[9] = Rat::one();
            (
                vec![],
                Declares {
                    rational_surface: true,
                    anti_k_effective: true,
                    anti_k_coeffs: Some(anti),
                    ..Declares::default()
                },
            )
        };
        SurfaceData::new(lat, k, delta, curves, declares).unwrap()
    }

    #[test]
    fn euler_characteristic_examples() {
        let s = del_pezzo_surface(8);
        let zero = vec![Rat::zero(); 9];
        assert_eq!(riemann_roch_chi(&s, &zero).unwrap(), rat(1));
        let mut h = vec![rat(1)];
        h.extend(vec![rat(0); 8]);
        assert_eq!(riemann_roch_chi(&s, &h).unwrap(), rat(3));
        let e1 = blowup_nine_surface(true);
        let negk = e1.neg_k();
        assert_eq!(riemann_roch_chi(&e1, &negk).unwrap(), rat(1));
        let (eff, chi) = nef_is_effective(&e1, &negk).unwrap();
        assert!(eff);
        assert_eq!(chi, rat(1));
        // a class pairing negatively with a listed curve is rejected
        let mut bad = vec![rat(0); 10];
        bad[1] = rat(1);
        assert!(matches!(
            nef_is_effective(&e1, &bad),
            Err(Error::NotNefAgainstList(_))
        ));
    }

    #[test]
    fn negativity_solver_worked_examples() {
        // A_2 pair of (-2)-curves inside the rank-10 lattice
        let s = blowup_nine_surface(false);
        let mut a1 = vec![Int::zero(); 10];
        a1[1] = Int::one();
        a1[2] = -Int::one();
        let mut a2 = vec![Int::zero(); 10];
        a2[2] = Int::one();
        a2[3] = -Int::one();
        let mut curves = s.curves().to_vec();
        curves.push(Curve {
            name: "a1".into(),
            class: a1,
            in_fiber: false,
        });
        curves.push(Curve {
            name: "a2".into(),
            class: a2,
            in_fiber: false,
        });
        let s = SurfaceData::new(
            s.lattice().clone(),
            s.k().to_vec(),
            vec![],
            curves,
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                ..Declares::default()
            },
        )
        .unwrap();
        let n = s.curves().len();
        let sol = negativity_solve(&s, &[n - 2, n - 1], &[rat(-1), rat(-1)]).unwrap();
        assert_eq!(sol.coeffs, vec![rat(1), rat(1)]);
        assert_eq!(sol.components, vec![vec![n - 2, n - 1]]);
        assert!(sol.support_is_component_union);
        // single curve
        let sol = negativity_solve(&s, &[n - 2], &[rat(-2)]).unwrap();
        assert_eq!(sol.coeffs, vec![rat(1)]);
        // zero targets give the zero divisor
        let sol = negativity_solve(&s, &[n - 2, n - 1], &[rat(0), rat(0)]).unwrap();
        assert_eq!(sol.coeffs, vec![rat(0), rat(0)]);
        assert!(sol.support_is_component_union);
        // disjoint pair splits into two components
        let sol = negativity_solve(&s, &[0, 2], &[rat(-1), rat(0)]).unwrap();
        assert_eq!(sol.components, vec![vec![0], vec![2]]);
        assert!(sol.support_is_component_union);
        // the anticanonical curve has square zero; its gram is refused
        let err = negativity_solve(&s, &[9], &[rat(0)]);
        assert!(matches!(err, Err(Error::NotNegativeDefinite)));
    }

    #[test]
    fn zariski_chain_example() {
        let s = chain_surface();
        // D = C + F
        let z = zariski_decompose(&s, &[rat(1), rat(1)]).unwrap();
        assert_eq!(z.p, vec![rat(1), ratio(1, 2)]);
        assert_eq!(z.n_support, vec![1]);
        assert_eq!(z.n_coeffs, vec![ratio(1, 2)]);
        assert_eq!(s.lattice().norm(&z.p), ratio(1, 2));
        // D = F alone is already nef
        let z = zariski_decompose(&s, &[rat(1), rat(0)]).unwrap();
        assert_eq!(z.p, rvec(&[1, 0]));
        assert!(z.n_support.is_empty());
        // D = C alone collapses entirely into the negative part
        let z = zariski_decompose(&s, &[rat(0), rat(1)]).unwrap();
        assert_eq!(z.p, vec![rat(0), rat(0)]);
        assert_eq!(z.n_support, vec![1]);
        assert_eq!(z.n_coeffs, vec![rat(1)]);
        assert_eq!(iitaka_case(&s, &z).unwrap(), IitakaCase::Zero);
        // negative input coefficients are rejected
        assert!(matches!(
            zariski_decompose(&s, &[rat(-1), rat(1)]),
            Err(Error::NotEffective)
        ));
    }

    #[test]
    fn zariski_is_order_independent_and_sound() {
        let s = blowup_nine_surface(false);
        let perm: Vec<usize> = vec![4, 9, 1, 7, 0, 3, 8, 2, 6, 5];
        let curves_perm: Vec<Curve> = perm.iter().map(|&i| s.curves()[i].clone()).collect();
        let sp = SurfaceData::new(
            s.lattice().clone(),
            s.k().to_vec(),
            vec![],
            curves_perm,
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                ..Declares::default()
            },
        )
        .unwrap();
        let mut rng = Sampler::new(11);
        for _ in 0..40 {
            let coeffs: Vec<Rat> = (0..s.curves().len())
                .map(|_| rat(rng.int_in(0, 3)))
                .collect();
            let z = zariski_decompose(&s, &coeffs).unwrap();
            // same divisor with permuted curve order
            let coeffs_perm: Vec<Rat> = perm.iter().map(|&i| coeffs[i].clone()).collect();
            let zp = zariski_decompose(&sp, &coeffs_perm).unwrap();
            assert_eq!(z.p, zp.p);
            assert_eq!(z.n_class(&s), zp.n_class(&sp));
            // invariants
            let nclass = z.n_class(&s);
            assert!(s.lattice().pairing(&z.p, &nclass).is_zero());
            assert!(s.nef_violation(&z.p).is_none());
            assert!(z.n_coeffs.iter().all(|a| a.is_positive()));
        }
    }

    #[test]
    fn iitaka_trichotomy_on_anticanonical_divisors() {
        let s = del_pezzo_surface(6);
        let z = zariski_decompose(&s, s.declares().anti_k_coeffs.as_ref().unwrap()).unwrap();
        assert_eq!(iitaka_case(&s, &z).unwrap(), IitakaCase::Two);
        let e1 = blowup_nine_surface(true);
        let z = zariski_decompose(&e1, e1.declares().anti_k_coeffs.as_ref().unwrap()).unwrap();
        assert_eq!(iitaka_case(&e1, &z).unwrap(), IitakaCase::One);
    }

    #[test]
    fn del_pezzo_class_counts() {
        for (r, expect) in [(3usize, 6usize), (6, 27)] {
            let s = del_pezzo_surface(r);
            let found = minus_one_classes(&s, 10, 100_000).unwrap();
            assert_eq!(found.classes.len(), expect, "r = {r}");
            assert!(found.complete);
            assert!(found.globally_complete);
        }
        // the exceptional classes themselves are found
        let s = del_pezzo_surface(3);
        let found = minus_one_classes(&s, 10, 100_000).unwrap();
        let mut e1 = vec![Int::zero(); 4];
        e1[1] = Int::one();
        assert!(found.classes.contains(&e1));
    }

    #[test]
    fn blowup_nine_counts_grow() {
        let s = blowup_nine_surface(false);
        let c: Vec<usize> = [1i64, 2, 3]
            .iter()
            .map(|&b| minus_one_classes(&s, b, 100_000).unwrap().classes.len())
            .collect();
        assert!(c[0] > 0);
        assert!(c[0] < c[1] && c[1] < c[2], "counts {c:?}");
        let found = minus_one_classes(&s, 2, 100_000).unwrap();
        assert!(found.complete);
        assert!(!found.globally_complete);
    }

    #[test]
    fn type_enumeration_counts() {
        let s = chain_surface();
        let z = ZariskiDecomp {
            p: vec![rat(0), rat(0)],
            n_support: vec![1],
            n_coeffs: vec![ratio(1, 2)],
        };
        let types = curve_types(&s, &z).unwrap();
        assert_eq!(types, vec![CurveType { lambdas: vec![2] }]);
        let z = ZariskiDecomp {
            p: vec![rat(0), rat(0)],
            n_support: vec![1],
            n_coeffs: vec![rat(1)],
        };
        assert_eq!(
            curve_types(&s, &z).unwrap(),
            vec![CurveType { lambdas: vec![1] }]
        );
        // nine components of weight 1/3: compositions of 3 into 9 slots
        let z = ZariskiDecomp {
            p: vec![rat(0), rat(0)],
            n_support: vec![1; 9],
            n_coeffs: vec![ratio(1, 3); 9],
        };
        let types = curve_types(&s, &z).unwrap();
        assert_eq!(types.len(), 165);
        assert!(types.windows(2).all(|w| w[0].lambdas < w[1].lambdas));
        // empty negative part is refused
        let z = ZariskiDecomp {
            p: vec![rat(0), rat(0)],
            n_support: vec![],
            n_coeffs: vec![],
        };
        assert!(curve_types(&s, &z).is_err());
    }

    #[test]
    fn fiber_translation_worked_example() {
        let s = blowup_nine_surface(true);
        // x = e1 - e2
        let mut x = vec![rat(0); 10];
        x[1] = rat(1);
        x[2] = rat(-1);
        let phi = mordell_weil_action(&s, &x).unwrap();
        let mut e9 = vec![rat(0); 10];
        e9[9] = rat(1);
        let image = phi.apply(&e9);
        let expected = rvec(&[3, 0, -2, -1, -1, -1, -1, -1, -1, 0]);
        assert_eq!(image, expected);
        assert_eq!(s.lattice().norm(&image), rat(-1));
        assert_eq!(s.lattice().pairing(&image, &s.neg_k()), rat(1));
        // the fiber class is fixed
        let negk = s.neg_k();
        assert_eq!(phi.apply(&negk), negk);
        // zero section gives the identity
        let zero = vec![rat(0); 10];
        assert!(mordell_weil_action(&s, &zero).unwrap().is_identity());
        // a class meeting the fibers is rejected
        let mut bad = vec![rat(0); 10];
        bad[1] = rat(1);
        assert!(mordell_weil_action(&s, &bad).is_err());
    }

    #[test]
    fn section_group_ranks() {
        let s = blowup_nine_surface(true);
        let g = mordell_weil_group_data(&s).unwrap();
        assert_eq!(g.rank, 8);
        assert!(g.torsion.is_empty());
        assert_eq!(g.representatives.len(), 8);
        // translation homomorphism on representatives
        let lat = s.lattice();
        let x1 = mat::int_to_rat_vec(&g.representatives[0]);
        let x2 = mat::int_to_rat_vec(&g.representatives[1]);
        let a = mordell_weil_action(&s, &x1).unwrap();
        let b = mordell_weil_action(&s, &x2).unwrap();
        let ab = mordell_weil_action(&s, &mat::vadd(&x1, &x2)).unwrap();
        assert_eq!(a.compose(&b).matrix(), ab.matrix());
        let _ = lat;
        // eight independent fiber components kill the free part
        let mut curves = s.curves().to_vec();
        for i in 1..=8 {
            let mut class = vec![Int::zero(); 10];
            class[i] = Int::one();
            class[i + 1] = -Int::one();
            curves.push(Curve {
                name: format!("fiber-root-{i}"),
                class,
                in_fiber: true,
            });
        }
        let mut declares = s.declares().clone();
        declares.anti_k_coeffs = None;
        let s2 = SurfaceData::new(
            s.lattice().clone(),
            s.k().to_vec(),
            s.delta().to_vec(),
            curves,
            declares,
        )
        .unwrap();
        let g2 = mordell_weil_group_data(&s2).unwrap();
        assert_eq!(g2.rank, 0);
    }

    #[test]
    fn chamber_cones_cover_the_toy_nef_cone() {
        // blown-up plane with two points: nef cone has rays h, h-e1, h-e2
        let lat =
            LorentzLattice::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]], &[3, -1, -1])
                .unwrap();
        let s = SurfaceData::new(
            lat.clone(),
            ivec(&[-3, 1, 1]),
            vec![],
            vec![
                Curve {
                    name: "e1".into(),
                    class: ivec(&[0, 1, 0]),
                    in_fiber: false,
                },
                Curve {
                    name: "e2".into(),
                    class: ivec(&[0, 0, 1]),
                    in_fiber: false,
                },
                Curve {
                    name: "line".into(),
                    class: ivec(&[1, -1, -1]),
                    in_fiber: false,
                },
            ],
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                ..Declares::default()
            },
        )
        .unwrap();
        let facets: Vec<Vec<Rat>> = (0..3).map(|i| lat.covector(&s.curve_class(i))).collect();
        let nef = PolyCone::from_facets(3, &facets).unwrap();
        assert_eq!(
            nef.rays(),
            &[ivec(&[1, -1, 0]), ivec(&[1, 0, -1]), ivec(&[1, 0, 0])]
        );
        let p = rvec(&[1, -1, 0]); // the ruling through the first point
        // sections of this ruling: e1 and 2h - e1 - 2e2
        let c1 = chamber_cone(&s, &p, &s.curve_class(0), &nef).unwrap();
        let c2 = chamber_cone(&s, &p, &rvec(&[2, -1, -2]), &nef).unwrap();
        assert_eq!(c2.rays(), &[ivec(&[1, -1, 0]), ivec(&[1, 0, -1])]);
        // the line through both points is a fiber component, so no chamber
        assert!(chamber_cone(&s, &p, &s.curve_class(2), &nef).is_err());
        // a class positive on the whole nef cone has the zero face: ray(p)
        let c0 = chamber_cone(&s, &p, &rvec(&[3, -1, -1]), &nef).unwrap();
        assert_eq!(c0.rays(), &[ivec(&[1, -1, 0])]);
        // sampled nef points all land in some chamber
        let mut rng = Sampler::new(5);
        let rays = nef.rays().to_vec();
        for _ in 0..60 {
            let x = rng.positive_combination(&rays);
            assert!(c1.contains(&x) || c2.contains(&x));
        }
    }

    #[test]
    fn classifier_branches() {
        let lat = LorentzLattice::from_i64(&[&[0, 1], &[1, 0]], &[1, 1]).unwrap();
        let rank2 = SurfaceData::new(
            lat,
            ivec(&[-2, -2]),
            vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
            vec![
                Curve {
                    name: "anticanonical-a".into(),
                    class: ivec(&[2, 2]),
                    in_fiber: false,
                },
                Curve {
                    name: "anticanonical-b".into(),
                    class: ivec(&[2, 2]),
                    in_fiber: false,
                },
            ],
            Declares {
                rational_surface: true,
                anti_k_effective: true,
                klt_calabi_yau: true,
                ..Declares::default()
            },
        )
        .unwrap();
        let rep = classify_cone(&rank2, &[1, 2, 3], 10_000).unwrap();
        assert_eq!(rep.verdict, Verdict::PolyhedralCertified);
        let dp = del_pezzo_surface(6);
        let rep = classify_cone(&dp, &[1, 2, 3], 10_000).unwrap();
        assert_eq!(rep.verdict, Verdict::PolyhedralCertified);
        assert_eq!(rep.counts.last().unwrap().1, 27);
        let bl9 = blowup_nine_surface(false);
        let rep = classify_cone(&bl9, &[1, 2, 3], 100_000).unwrap();
        assert_eq!(rep.verdict, Verdict::NotPolyhedralWithinBound);
        // deterministic across reruns
        let rep2 = classify_cone(&bl9, &[1, 2, 3], 100_000).unwrap();
        assert_eq!(rep.verdict, rep2.verdict);
        assert_eq!(rep.counts, rep2.counts);
    }

    #[test]
    fn enumerated_classes_stay_classes_under_translation() {
        let s = blowup_nine_surface(true);
        let g = mordell_weil_group_data(&s).unwrap();
        let x = mat::int_to_rat_vec(&g.representatives[0]);
        let phi = mordell_weil_action(&s, &x).unwrap();
        let found = minus_one_classes(&s, 2, 100_000).unwrap();
        assert!(!found.classes.is_empty());
        for e in &found.classes {
            let image = phi.apply(&mat::int_to_rat_vec(e));
            assert_eq!(s.lattice().norm(&image), rat(-1));
            assert_eq!(s.lattice().pairing(&image, &s.neg_k()), rat(1));
        }
    }
}
