//! Complete fans in `N ≅ Z²`.
//!
//! A [`Fan`] stores primitive rays `n_0, …, n_{c-1}` in strict
//! counter-clockwise order, starting from the first ray at angle `>= 0`
//! measured from `(1, 0)`. Cone `σ_i` is spanned by `n_i` and `n_{i+1}`
//! (indices mod `c`) and ray `n_i` corresponds to the boundary divisor `D_i`.
//! Every complete fan in dimension two is projective, so completeness is the
//! only global condition checked.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{angular_cmp, det2, LatticeVector};
use crate::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    rays: Vec<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// `|det(n_i, n_{i+1})|` for each cone `σ_i`.
    pub cone_indices: Vec<i128>,
}

/// Class group `Z^rank ⊕ ⊕ Z/t` of the toric surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    pub rank: usize,
    pub torsion: Vec<i128>,
    /// Image of each `D_i`: one coordinate per torsion factor (reduced into
    /// `0..t`), followed by `rank` free coordinates. The basis is whatever the
    /// Smith normal form produced, so only compare these up to isomorphism.
    pub ray_classes: Vec<Vec<i128>>,
}

/// A complete fan on three rays summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FakePlane {
    /// Counter-clockwise.
    pub rays: [LatticeVector; 3],
    /// Some pair of rays is a lattice basis, so the surface is `P²`.
    pub is_projective_plane: bool,
    pub cone_indices: [i128; 3],
}

/// Named surfaces with a standard fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    P2,
    P1xP1,
    /// Rays `(1,0), (0,1), (-1,a), (0,-1)`.
    Hirzebruch(i64),
    /// `P²` blown up at its three torus-fixed points.
    Bl3P2,
    /// Rays `n1, n2, -n1-n2`.
    FakePlane(LatticeVector, LatticeVector),
}

impl Fan {
    /// Validates and normalizes a ray list. Input order is irrelevant.
    pub fn new<I>(raw_rays: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeVector>,
    {
        let mut rays: Vec<LatticeVector> = raw_rays.into_iter().collect();
        if let Some(&bad) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::NonPrimitiveRay(bad));
        }
        rays.sort_by(|a, b| angular_cmp(*a, *b));
        if let Some(w) = rays.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRay(w[0]));
        }
        if rays.len() < 3 {
            return Err(Error::TooFewRays(rays.len()));
        }
        let c = rays.len();
        for i in 0..c {
            let (a, b) = (rays[i], rays[(i + 1) % c]);
            if det2(a, b) <= 0 {
                return Err(Error::NotComplete(format!(
                    "consecutive rays {a} and {b} span no strictly convex cone"
                )));
            }
        }
        Ok(Self { rays })
    }

    pub fn preset(preset: Preset) -> Result<Self> {
        let v = LatticeVector::new;
        match preset {
            Preset::P2 => Self::new([v(1, 0), v(0, 1), v(-1, -1)]),
            Preset::P1xP1 => Self::new([v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]),
            Preset::Hirzebruch(a) => {
                if a < 0 {
                    return Err(Error::Domain(format!("Hirzebruch index {a} is negative")));
                }
                Self::new([v(1, 0), v(0, 1), v(-1, a), v(0, -1)])
            }
            Preset::Bl3P2 => Self::new([
                v(1, 0),
                v(1, 1),
                v(0, 1),
                v(-1, 0),
                v(-1, -1),
                v(0, -1),
            ]),
            Preset::FakePlane(n1, n2) => {
                let plane = FakePlane::new(n1, n2, -(n1 + n2))?;
                Ok(plane.fan())
            }
        }
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn ray(&self, i: usize) -> LatticeVector {
        self.rays[i % self.rays.len()]
    }

    /// Generators `(n_i, n_{i+1})` of cone `σ_i`.
    pub fn cone(&self, i: usize) -> (LatticeVector, LatticeVector) {
        (self.ray(i), self.ray(i + 1))
    }

    pub fn index_of(&self, ray: LatticeVector) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(())
    }

    pub fn smoothness(&self) -> SmoothnessReport {
        let cone_indices: Vec<i128> = (0..self.len())
            .map(|i| {
                let (a, b) = self.cone(i);
                det2(a, b).abs()
            })
            .collect();
        SmoothnessReport {
            smooth: cone_indices.iter().all(|&d| d == 1),
            cone_indices,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().smooth
    }

    /// The cone containing `v`. A vector on ray `n_i` is assigned to `σ_i`,
    /// the cone that starts there.
    ///
    /// # Panics
    /// If `v` is zero.
    pub fn cone_containing(&self, v: LatticeVector) -> usize {
        assert!(!v.is_zero(), "the origin lies in every cone");
        (0..self.len())
            .find(|&i| {
                let (a, b) = self.cone(i);
                det2(a, v) >= 0 && det2(v, b) > 0
            })
            .expect("a complete fan covers the plane")
    }

    /// Stellar subdivision of the smooth cone `σ_i`: inserts `n_i + n_{i+1}`.
    pub fn blow_up(&self, cone_index: usize) -> Result<Fan> {
        self.check_index(cone_index)?;
        let (a, b) = self.cone(cone_index);
        let det = det2(a, b);
        if det != 1 {
            return Err(Error::SingularCone {
                index: cone_index,
                det,
            });
        }
        let mut rays = self.rays.clone();
        rays.insert(cone_index + 1, a + b);
        Fan::new(rays)
    }

    /// The fan on a subset of the rays. The result may be singular; it must
    /// still be complete.
    pub fn delete_rays(&self, keep: &[usize]) -> Result<Fan> {
        for &i in keep {
            self.check_index(i)?;
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() < 3 {
            return Err(Error::NotComplete(format!("only {} rays kept", kept.len())));
        }
        Fan::new(kept.into_iter().map(|i| self.rays[i]))
    }

    /// Pairs `i < j` with `n_i = -n_j`.
    pub fn opposite_ray_pairs(&self) -> Vec<(usize, usize)> {
        let c = self.len();
        (0..c)
            .flat_map(|i| (i + 1..c).map(move |j| (i, j)))
            .filter(|&(i, j)| (self.rays[i] + self.rays[j]).is_zero())
            .collect()
    }

    /// Triples `i < j < k` with `n_i + n_j + n_k = 0`.
    pub fn zero_sum_triples(&self) -> Vec<([usize; 3], FakePlane)> {
        let c = self.len();
        let mut out = Vec::new();
        for i in 0..c {
            for j in i + 1..c {
                let needed = -(self.rays[i] + self.rays[j]);
                for k in j + 1..c {
                    if self.rays[k] == needed {
                        let plane = FakePlane::new(self.rays[i], self.rays[j], self.rays[k])
                            .expect("distinct primitive rays summing to zero");
                        out.push(([i, j, k], plane));
                    }
                }
            }
        }
        out
    }

    /// Cokernel of `M → Z^c`, `m ↦ (<m, n_i>)_i`.
    pub fn class_group(&self) -> ClassGroup {
        let c = self.len();
        let matrix: Vec<Vec<i128>> = self
            .rays
            .iter()
            .map(|r| vec![r.x as i128, r.y as i128])
            .collect();
        let snf = smith_normal_form(&matrix);
        let factors = &snf.invariant_factors;
        let rank = c - factors.len();

        let mut left = snf.left;
        // Fix the sign of each free basis vector: first nonzero entry positive.
        for row in left.iter_mut().skip(factors.len()) {
            if row.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }

        let torsion_rows: Vec<usize> = (0..factors.len()).filter(|&k| factors[k] > 1).collect();
        let ray_classes = (0..c)
            .map(|i| {
                let torsion = torsion_rows
                    .iter()
                    .map(|&k| left[k][i].rem_euclid(factors[k]));
                let free = (factors.len()..c).map(|k| left[k][i]);
                torsion.chain(free).collect()
            })
            .collect();
        ClassGroup {
            rank,
            torsion: torsion_rows.iter().map(|&k| factors[k]).collect(),
            ray_classes,
        }
    }

    /// `C · (-K_S) = Σ C · D_i`.
    pub fn anticanonical_pairing(&self, intersections: &[i64]) -> Result<i64> {
        if intersections.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: intersections.len(),
            });
        }
        Ok(intersections.iter().sum())
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", rays.join(", "))
    }
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Fan", 1)?;
        st.serialize_field("rays", &self.rays)?;
        st.end()
    }
}

impl FakePlane {
    pub fn new(n1: LatticeVector, n2: LatticeVector, n3: LatticeVector) -> Result<Self> {
        let mut rays = [n1, n2, n3];
        if let Some(&bad) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(Error::InvalidFakePlane(format!("ray {bad} is not primitive")));
        }
        if !(n1 + n2 + n3).is_zero() {
            return Err(Error::InvalidFakePlane(format!(
                "rays {n1}, {n2}, {n3} do not sum to zero"
            )));
        }
        if det2(n1, n2) == 0 {
            return Err(Error::InvalidFakePlane(format!("rays {n1}, {n2} are collinear")));
        }
        rays.sort_by(|a, b| angular_cmp(*a, *b));
        let cone_indices = [0, 1, 2].map(|i| det2(rays[i], rays[(i + 1) % 3]).abs());
        Ok(Self {
            rays,
            is_projective_plane: cone_indices.contains(&1),
            cone_indices,
        })
    }

    pub fn fan(&self) -> Fan {
        Fan::new(self.rays).expect("three zero-sum rays form a complete fan")
    }

    pub fn negated(&self) -> FakePlane {
        let [a, b, c] = self.rays;
        FakePlane::new(-a, -b, -c).expect("negation preserves the fake plane conditions")
    }
}
