//! Alcove geometry of type Â₁ on the Pascal triangle of one-column
//! bipartitions.
//!
//! A point `(c1, c2)` has pairing `p = (c1 - c2) + rho`; it lies on the wall
//! with index `m` (the hyperplane usually written `H_{m-1/2}`) iff `p = m e`.
//! Walls are therefore named by plain integers: index `1` is `H_{1/2}`, index
//! `0` is `H_{-1/2}`, and so on. All arithmetic stays in integers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{AlgebraConfig, Bipartition, CombError, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("path meets wall {wall} only {found} time(s); occurrence {wanted} requested")]
    MissingIntersection { wall: i64, found: usize, wanted: usize },
    #[error("path does not index a basis element of the simple module")]
    NotSimpleBasis,
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Length `ℓ` stored as twice its value, so walls (half-integers) and alcoves
/// (integers) share one exact representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Length {
    pub twice: i64,
}

impl Length {
    pub fn is_wall(&self) -> bool {
        self.twice.rem_euclid(2) != 0
    }

    pub fn is_alcove(&self) -> bool {
        !self.is_wall()
    }

    /// The alcove index, for lengths in an alcove.
    pub fn alcove(&self) -> Option<i64> {
        self.is_alcove().then_some(self.twice / 2)
    }

    /// The wall index `m` with `ℓ = m - 1/2`, for lengths on a wall.
    pub fn wall(&self) -> Option<i64> {
        self.is_wall().then_some((self.twice + 1) / 2)
    }

    /// Twice `|ℓ|`.
    pub fn abs_twice(&self) -> i64 {
        self.twice.abs()
    }

    /// Which side of the origin the length sits on; zero counts as negative.
    pub fn side(&self) -> Side {
        if self.twice <= 0 {
            Side::Neg
        } else {
            Side::Pos
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_wall() {
            write!(f, "{}/2", self.twice)
        } else {
            write!(f, "{}", self.twice / 2)
        }
    }
}

/// Sign convention used to mirror statements about non-positive lengths
/// onto positive ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Neg,
    Pos,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Neg => Side::Pos,
            Side::Pos => Side::Neg,
        }
    }

    /// The wall of the fundamental alcove on the far side of the origin.
    pub fn far_wall(self) -> i64 {
        match self {
            Side::Neg => 1,
            Side::Pos => 0,
        }
    }

    /// The wall of the fundamental alcove on this side of the origin.
    pub fn near_wall(self) -> i64 {
        match self {
            Side::Neg => 0,
            Side::Pos => 1,
        }
    }

    /// The wall bounding alcove `m` away from the origin.
    pub fn outer_wall(self, m: i64) -> i64 {
        match self {
            Side::Neg => m,
            Side::Pos => m + 1,
        }
    }
}

/// The geometry attached to a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeometryContext {
    pub cfg: AlgebraConfig,
}

impl GeometryContext {
    pub fn new(cfg: AlgebraConfig) -> Self {
        GeometryContext { cfg }
    }

    pub fn e(&self) -> i64 {
        self.cfg.e()
    }

    pub fn rho(&self) -> i64 {
        self.cfg.rho()
    }

    /// Pairing of the point with label `v = c1 - c2`.
    pub fn pairing_of_label(&self, v: i64) -> i64 {
        v + self.rho()
    }

    pub fn length_of_pairing(&self, p: i64) -> Length {
        let e = self.e();
        if p.rem_euclid(e) == 0 {
            Length { twice: 2 * (p / e) - 1 }
        } else {
            Length { twice: 2 * p.div_euclid(e) }
        }
    }

    pub fn length(&self, shape: &Bipartition) -> Length {
        self.length_of_pairing(self.pairing_of_label(shape.label()))
    }

    /// Wall index of a pairing value, if it lies on a wall.
    pub fn wall_of_pairing(&self, p: i64) -> Option<i64> {
        (p.rem_euclid(self.e()) == 0).then(|| p / self.e())
    }

    /// Label of the mirror image of label `v` in wall `m`.
    pub fn reflect_label(&self, v: i64, wall: i64) -> i64 {
        let p = self.pairing_of_label(v);
        2 * wall * self.e() - p - self.rho()
    }

    /// The bipartitions of `d` in the affine Weyl orbit of `shape`, sorted by
    /// `|ℓ|` and then with non-positive lengths first.
    pub fn linkage_class(&self, shape: &Bipartition) -> Vec<Bipartition> {
        let d = shape.size();
        let p = self.pairing_of_label(shape.label());
        let e2 = 2 * self.e();
        let mut out: Vec<Bipartition> = (-(d as i64)..=d as i64)
            .filter(|&v| {
                let q = self.pairing_of_label(v);
                (q - p).rem_euclid(e2) == 0 || (q + p).rem_euclid(e2) == 0
            })
            .filter_map(|v| Bipartition::from_label(d, v))
            .collect();
        out.sort_by_key(|b| {
            let l = self.length(b);
            (l.abs_twice(), l.twice)
        });
        out
    }

    pub fn linked(&self, a: &Bipartition, b: &Bipartition) -> bool {
        a.size() == b.size() && self.linkage_class(a).contains(b)
    }

    /// Whether `mu ⊵ lambda` in the order governing decomposition numbers:
    /// `mu = lambda`, or the two are linked and `mu` is strictly closer to the
    /// origin. Linked shapes at equal distance on opposite sides are
    /// incomparable.
    pub fn dominates(&self, mu: &Bipartition, lambda: &Bipartition) -> bool {
        mu == lambda || (self.linked(mu, lambda) && self.length(mu).abs_twice() < self.length(lambda).abs_twice())
    }

    /// The shapes `mu ⊵ lambda` of the linkage class, ordered as in
    /// [`GeometryContext::linkage_class`].
    pub fn dominating_class(&self, shape: &Bipartition) -> Vec<Bipartition> {
        self.linkage_class(shape).into_iter().filter(|mu| self.dominates(mu, shape)).collect()
    }

    /// `Path_∼(λ)`: the paths ending at some `mu ⊵ λ` with the residue
    /// sequence of the initial tableau of `λ`.
    pub fn path_sim(&self, shape: &Bipartition) -> Vec<Path> {
        let target = Tableau::initial(*shape).residue_sequence(&self.cfg);
        self.dominating_class(shape)
            .iter()
            .flat_map(|b| Tableau::enumerate(*b))
            .filter(|t| t.residue_sequence(&self.cfg) == target)
            .map(Path::from)
            .collect()
    }
}

/// A lattice path in the Pascal triangle; the same data as a standard
/// tableau, viewed through its sequence of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    tab: Tableau,
}

impl From<Tableau> for Path {
    fn from(tab: Tableau) -> Self {
        Path { tab }
    }
}

impl From<Path> for Tableau {
    fn from(p: Path) -> Self {
        p.tab
    }
}

/// Summary of how a path meets the walls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathClass {
    /// `(step, wall)` for every point of the path on a wall, in order.
    pub touches: Vec<(usize, i64)>,
    pub last_wall: Option<i64>,
    pub length_increasing: bool,
}

impl PathClass {
    pub fn touches_wall(&self, wall: i64) -> bool {
        self.touches.iter().any(|&(_, w)| w == wall)
    }

    pub fn last_touch_of(&self, wall: i64) -> Option<usize> {
        self.touches.iter().rev().find(|&&(_, w)| w == wall).map(|&(k, _)| k)
    }

    pub fn first_touch_of(&self, wall: i64) -> Option<usize> {
        self.touches.iter().find(|&&(_, w)| w == wall).map(|&(k, _)| k)
    }
}

impl Path {
    pub fn from_steps(steps: &[u8]) -> Result<Self, GeomError> {
        Ok(Path { tab: Tableau::from_steps(steps)? })
    }

    pub fn tableau(&self) -> Tableau {
        self.tab
    }

    pub fn len(&self) -> usize {
        self.tab.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn end(&self) -> Bipartition {
        self.tab.shape()
    }

    pub fn steps(&self) -> Vec<u8> {
        self.tab.steps()
    }

    /// Labels `c1 - c2` of the points `0..=d`.
    pub fn labels(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.len() + 1);
        let mut x = 0i64;
        v.push(0);
        for s in self.steps() {
            x += if s == 1 { 1 } else { -1 };
            v.push(x);
        }
        v
    }

    /// Points `(c1, c2)` for `k = 0..=d`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        (0..=self.len())
            .map(|k| {
                let b = self.tab.shape_at(k);
                (b.l1, b.l2)
            })
            .collect()
    }

    pub fn pairings(&self, ctx: &GeometryContext) -> Vec<i64> {
        self.labels().into_iter().map(|v| ctx.pairing_of_label(v)).collect()
    }

    /// Steps `k` (1-based point indices) at which the path sits on `wall`.
    pub fn intersections(&self, ctx: &GeometryContext, wall: i64) -> Vec<usize> {
        let target = wall * ctx.e();
        self.pairings(ctx).iter().enumerate().filter(|&(_, &p)| p == target).map(|(k, _)| k).collect()
    }

    pub fn last_intersection(&self, ctx: &GeometryContext, wall: i64) -> Option<usize> {
        self.intersections(ctx, wall).last().copied()
    }

    /// Reflects everything after the `occurrence`-th (1-based) meeting with
    /// `wall` through that wall.
    pub fn reflect(&self, ctx: &GeometryContext, wall: i64, occurrence: usize) -> Result<Path, GeomError> {
        let hits = self.intersections(ctx, wall);
        if occurrence == 0 || occurrence > hits.len() {
            return Err(GeomError::MissingIntersection { wall, found: hits.len(), wanted: occurrence });
        }
        Ok(self.flip_after(hits[occurrence - 1]))
    }

    /// Reflects at the last meeting with `wall`.
    pub fn reflect_last(&self, ctx: &GeometryContext, wall: i64) -> Result<Path, GeomError> {
        let n = self.intersections(ctx, wall).len();
        self.reflect(ctx, wall, n.max(1))
    }

    /// Swaps the two kinds of step strictly after point `k`.
    pub(crate) fn flip_after(&self, k: usize) -> Path {
        self.flip_range(k, self.len())
    }

    /// Swaps the kinds of the steps `k+1 ..= l`.
    pub(crate) fn flip_range(&self, k: usize, l: usize) -> Path {
        let mut steps = self.steps();
        for s in &mut steps[k..l] {
            *s = 3 - *s;
        }
        Path::from_steps(&steps).expect("flipped steps are valid")
    }

    /// Degree computed step by step from wall contacts.
    pub fn degree(&self, ctx: &GeometryContext) -> i64 {
        let ps = self.pairings(ctx);
        let e = ctx.e();
        let steps = self.steps();
        let mut deg = 0;
        for (k, &s) in steps.iter().enumerate() {
            let (p, q) = (ps[k], ps[k + 1]);
            let (p_wall, q_wall) = (p.rem_euclid(e) == 0, q.rem_euclid(e) == 0);
            if s == 1 {
                if p_wall && p <= 0 {
                    deg += 1;
                }
                if q_wall && q <= 0 {
                    deg -= 1;
                }
            } else {
                if p_wall && p > 0 {
                    deg += 1;
                }
                if q_wall && q > 0 {
                    deg -= 1;
                }
            }
        }
        deg
    }

    pub fn classify(&self, ctx: &GeometryContext) -> PathClass {
        let ps = self.pairings(ctx);
        let touches: Vec<(usize, i64)> =
            ps.iter().enumerate().filter_map(|(k, &p)| ctx.wall_of_pairing(p).map(|w| (k, w))).collect();
        let mut length_increasing = true;
        let mut prev = 0;
        for &p in &ps {
            let a = ctx.length_of_pairing(p).abs_twice();
            if a < prev {
                length_increasing = false;
            }
            prev = a;
        }
        PathClass { last_wall: touches.last().map(|t| t.1), touches, length_increasing }
    }

    pub fn residue_sequence(&self, cfg: &AlgebraConfig) -> Vec<u32> {
        self.tab.residue_sequence(cfg)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Whether `path` indexes a basis element of the simple module of its
/// endpoint.
pub fn in_simple_basis(ctx: &GeometryContext, path: &Path) -> bool {
    let len = ctx.length(&path.end());
    let side = len.side();
    let class = path.classify(ctx);
    if class.touches_wall(side.far_wall()) {
        return false;
    }
    match len.alcove() {
        Some(m) => class.last_wall != Some(side.outer_wall(m)),
        None => true,
    }
}

/// Whether `path` lies in the spanning set of the image of the map from the
/// source on the far side of the origin.
pub fn in_prime_image(ctx: &GeometryContext, path: &Path) -> bool {
    let side = ctx.length(&path.end()).side();
    path.classify(ctx).touches_wall(side.far_wall())
}

/// Whether `path` lies in the spanning set of the image of the map from the
/// source on the same side as the endpoint (alcove endpoints only).
pub fn in_main_image(ctx: &GeometryContext, path: &Path) -> bool {
    let len = ctx.length(&path.end());
    let Some(m) = len.alcove() else { return false };
    let side = len.side();
    let class = path.classify(ctx);
    if class.last_wall == Some(side.outer_wall(m)) {
        return true;
    }
    match (class.first_touch_of(side.near_wall()), class.last_touch_of(side.far_wall())) {
        (Some(a), Some(b)) => a < b,
        _ => false,
    }
}

/// The partner path of negated degree, built segment by segment between
/// consecutive wall contacts: a stretch between two contacts with the same
/// wall is mirrored in that wall, every other stretch is copied.
pub fn bar_path(ctx: &GeometryContext, path: &Path) -> Result<Path, GeomError> {
    if !in_simple_basis(ctx, path) {
        return Err(GeomError::NotSimpleBasis);
    }
    let touches = path.classify(ctx).touches;
    let mut out = *path;
    for pair in touches.windows(2) {
        let ((k1, w1), (k2, w2)) = (pair[0], pair[1]);
        if w1 == w2 {
            out = out.flip_range(k1, k2);
        }
    }
    Ok(out)
}

/// All paths of a shape that index the simple basis.
pub fn simple_basis_paths(ctx: &GeometryContext, shape: &Bipartition) -> Vec<Path> {
    Tableau::enumerate(*shape).into_iter().map(Path::from).filter(|p| in_simple_basis(ctx, p)).collect()
}
