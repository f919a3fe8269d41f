//! Klein symmetries of an arrangement and their action on a covering.
//!
//! A Klein transformation of the plane is a projectivity, possibly composed with
//! complex conjugation. One that lifts to the cover must permute the lines while
//! preserving incidences, and must carry the quotient-row table to itself under
//! ψ ↦ (−1)^{kl g}·ψ∘g_*.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::cover::{quotient_rows, CharacterMap, CharacterRow, CoverError, QuotientFamily};
use crate::exactmath::{CycloNum, ExactMatrix};

/// A permutation of line labels `1..=n`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinePermutation(Vec<usize>);

impl LinePermutation {
    pub fn identity(n: usize) -> Self {
        LinePermutation((1..=n).collect())
    }

    /// From 1-based images; `None` unless they form a permutation of `1..=n`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        (distinct.len() == n && images.iter().all(|&i| (1..=n).contains(&i)))
            .then_some(LinePermutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, label: usize) -> usize {
        self.0[label - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| img == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinePermutation) -> LinePermutation {
        LinePermutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> LinePermutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img - 1] = i + 1;
        }
        LinePermutation(inv)
    }
}

impl fmt::Display for LinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for LinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Line sets of the points of multiplicity ≥ 3.
fn multiple_point_sets(arr: &Arrangement) -> BTreeSet<BTreeSet<usize>> {
    arr.multiple_points().into_iter().map(|p| p.lines.clone()).collect()
}

/// Multiplicity of the intersection point of every pair of lines.
fn pair_multiplicities(arr: &Arrangement) -> BTreeMap<(usize, usize), usize> {
    let labels = arr.labels();
    let mut out = BTreeMap::new();
    for &r in &labels {
        for &s in &labels {
            if r != s {
                let m = arr.pair_point(r, s).map_or(0, |p| p.multiplicity());
                out.insert((r, s), m);
            }
        }
    }
    out
}

/// Every line permutation mapping the multiple points onto multiple points.
///
/// Backtracking over labels in order; a partial assignment survives only while it
/// preserves the multiplicity of the intersection point of every assigned pair.
pub fn incidence_automorphisms(arr: &Arrangement) -> Vec<LinePermutation> {
    let labels = arr.labels();
    let pairs = pair_multiplicities(arr);
    let points = multiple_point_sets(arr);
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(labels.len());
    let mut used = vec![false; labels.len() + 1];
    extend(&labels, &pairs, &points, &mut images, &mut used, &mut out);
    out
}

fn extend(
    labels: &[usize],
    pairs: &BTreeMap<(usize, usize), usize>,
    points: &BTreeSet<BTreeSet<usize>>,
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<LinePermutation>,
) {
    let k = images.len();
    if k == labels.len() {
        let perm = LinePermutation(images.clone());
        let preserved = points.iter().all(|s| {
            let img: BTreeSet<usize> = s.iter().map(|&l| perm.apply(l)).collect();
            points.contains(&img)
        });
        if preserved {
            out.push(perm);
        }
        return;
    }
    let line = labels[k];
    for &cand in labels {
        if used[cand] {
            continue;
        }
        let consistent = (0..k).all(|i| pairs[&(labels[i], line)] == pairs[&(images[i], cand)]);
        if !consistent {
            continue;
        }
        used[cand] = true;
        images.push(cand);
        extend(labels, pairs, points, images, used, out);
        images.pop();
        used[cand] = false;
    }
}

/// A line permutation together with a realizing (anti)projectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinCandidate {
    pub permutation: LinePermutation,
    /// `false` when kl g = 1, i.e. the transformation is antiholomorphic.
    pub holomorphic: bool,
    /// Acts on line covectors: `matrix · c̃_i ∥ c_{π(i)}`, with `c̃` the conjugate
    /// covector for antiholomorphic candidates.
    pub matrix: ExactMatrix,
}

impl KleinCandidate {
    pub fn describe(&self) -> String {
        match (self.permutation.is_identity(), self.holomorphic) {
            (true, true) => "identity".to_string(),
            (true, false) => "conjugation".to_string(),
            (false, true) => format!("holomorphic {}", self.permutation),
            (false, false) => format!("antiholomorphic {}", self.permutation),
        }
    }
}

fn cross(u: &[CycloNum], v: &[CycloNum]) -> [CycloNum; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn proportional(u: &[CycloNum], v: &[CycloNum]) -> bool {
    cross(u, v).iter().all(CycloNum::is_zero)
}

fn columns(vectors: &[&[CycloNum; 3]]) -> ExactMatrix {
    ExactMatrix::from_rows(3, vectors.iter().map(|v| v.to_vec()).collect())
        .expect("three entries per covector")
        .transpose()
}

/// 4-tuples of labels, no three concurrent, in lexicographic order.
pub fn general_position_anchors(arr: &Arrangement) -> impl Iterator<Item = [usize; 4]> + '_ {
    let labels = arr.labels();
    let n = labels.len();
    let tuples: Vec<[usize; 4]> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .flat_map(|(a, b)| (b + 1..n).map(move |c| (a, b, c)))
        .flat_map(|(a, b, c)| (c + 1..n).map(move |d| (a, b, c, d)))
        .map(|(a, b, c, d)| [labels[a], labels[b], labels[c], labels[d]])
        .collect();
    tuples.into_iter().filter(move |t| {
        (0..4).all(|skip| {
            let three: Vec<&[CycloNum; 3]> = (0..4)
                .filter(|&i| i != skip)
                .map(|i| arr.line(t[i]).expect("label from arrangement").coeffs())
                .collect();
            columns(&three).det3().is_ok_and(|d| !d.is_zero())
        })
    })
}

/// Realizes `perm` by a projectivity (or a projectivity after conjugation) using the
/// first general-position anchor.
pub fn realize(perm: &LinePermutation, holomorphic: bool, arr: &Arrangement) -> Option<KleinCandidate> {
    let anchor = general_position_anchors(arr).next()?;
    realize_with_anchor(perm, holomorphic, arr, anchor)
}

/// Fixes the transformation on four lines in general position, where it is unique
/// up to scale, then checks it on the remaining lines.
pub fn realize_with_anchor(
    perm: &LinePermutation,
    holomorphic: bool,
    arr: &Arrangement,
    anchor: [usize; 4],
) -> Option<KleinCandidate> {
    let source = |l: usize| -> [CycloNum; 3] {
        let c = arr.line(l).expect("label from arrangement").coeffs().clone();
        if holomorphic {
            c
        } else {
            c.map(|x| x.conj())
        }
    };
    let target = |l: usize| arr.line(perm.apply(l)).expect("image label").coeffs().clone();

    let src: Vec<[CycloNum; 3]> = anchor.iter().map(|&l| source(l)).collect();
    let dst: Vec<[CycloNum; 3]> = anchor.iter().map(|&l| target(l)).collect();
    let src_basis = columns(&[&src[0], &src[1], &src[2]]);
    let dst_basis = columns(&[&dst[0], &dst[1], &dst[2]]);
    let src_inv = src_basis.inverse3().ok()?;
    let dst_inv = dst_basis.inverse3().ok()?;
    let a = src_inv.mul_vec(&src[3]).ok()?;
    let b = dst_inv.mul_vec(&dst[3]).ok()?;

    let mut scale = ExactMatrix::zeros(3, 3);
    for k in 0..3 {
        scale.set(k, k, b[k].checked_div(&a[k]).ok()?);
        if scale.get(k, k).is_zero() {
            return None;
        }
    }
    let matrix = dst_basis.mul(&scale).ok()?.mul(&src_inv).ok()?;

    let all_match = arr.labels().into_iter().all(|l| {
        let image = matrix.mul_vec(&source(l)).expect("length 3");
        proportional(&image, &target(l))
    });
    all_match.then(|| KleinCandidate {
        permutation: perm.clone(),
        holomorphic,
        matrix,
    })
}

/// r_i counts of each row after the candidate acts. A permutation of lines keeps
/// the counts, while the sign flip reverses r_1, …, r_{p−1}.
fn acted_profile(row: &CharacterRow, holomorphic: bool) -> Vec<usize> {
    let prof = row.weight_profile();
    if holomorphic {
        return prof;
    }
    let p = prof.len();
    (0..p).map(|i| prof[(p - i) % p]).collect()
}

fn act(row: &CharacterRow, cand: &KleinCandidate) -> CharacterRow {
    let pulled = row.pull_back(cand.permutation.images());
    if cand.holomorphic {
        pulled
    } else {
        pulled.scaled(row.p() - 1)
    }
}

/// Necessary condition: each acted-on row has the profile of some row of the table.
pub fn profile_filter(cand: &KleinCandidate, fam: &QuotientFamily) -> bool {
    let profiles: BTreeSet<Vec<usize>> = fam.all_rows().map(CharacterRow::weight_profile).collect();
    fam.all_rows()
        .all(|row| profiles.contains(&acted_profile(row, cand.holomorphic)))
}

/// Whether ψ ↦ (−1)^{kl g}·ψ∘g_* maps the row table into itself.
pub fn respects_covering(cand: &KleinCandidate, fam: &QuotientFamily) -> bool {
    profile_filter(cand, fam) && respects_covering_unfiltered(cand, fam)
}

/// The row-set test alone, without the profile pre-check.
pub fn respects_covering_unfiltered(cand: &KleinCandidate, fam: &QuotientFamily) -> bool {
    fam.all_rows().all(|row| fam.contains(&act(row, cand)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub deck_group_order: u64,
    pub incidence_automorphisms: usize,
    pub realizable: usize,
    pub realizable_holomorphic: usize,
    pub realizable_antiholomorphic: usize,
    pub respecting: Vec<String>,
    /// Closure of the surviving set under composition.
    pub survivors_form_group: bool,
    #[serde(skip)]
    pub survivors: Vec<KleinCandidate>,
}

/// All realizable candidates, holomorphic first, each list in permutation order.
pub fn realizable_candidates(arr: &Arrangement) -> Vec<KleinCandidate> {
    let perms = incidence_automorphisms(arr);
    let mut out: Vec<KleinCandidate> = [true, false]
        .into_iter()
        .flat_map(|h| perms.iter().map(move |p| (p, h)))
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&(p, h)| realize(p, h, arr))
        .collect();
    out.sort_by(|a, b| (!a.holomorphic, &a.permutation).cmp(&(!b.holomorphic, &b.permutation)));
    out
}

fn is_group(cands: &[KleinCandidate]) -> bool {
    let keys: BTreeSet<(&LinePermutation, bool)> =
        cands.iter().map(|c| (&c.permutation, c.holomorphic)).collect();
    cands.iter().all(|a| {
        cands.iter().all(|b| {
            let comp = a.permutation.compose(&b.permutation);
            keys.contains(&(&comp, a.holomorphic == b.holomorphic))
        })
    })
}

pub fn rigidity_search(arr: &Arrangement, c: &CharacterMap) -> Result<RigidityReport, CoverError> {
    let fam = quotient_rows(c)?;
    let autos = incidence_automorphisms(arr).len();
    let realizable = realizable_candidates(arr);
    let survivors: Vec<KleinCandidate> = realizable
        .par_iter()
        .filter(|cand| respects_covering(cand, &fam))
        .cloned()
        .collect();
    Ok(RigidityReport {
        deck_group_order: c.group_order(),
        incidence_automorphisms: autos,
        realizable: realizable.len(),
        realizable_holomorphic: realizable.iter().filter(|c| c.holomorphic).count(),
        realizable_antiholomorphic: realizable.iter().filter(|c| !c.holomorphic).count(),
        respecting: survivors.iter().map(KleinCandidate::describe).collect(),
        survivors_form_group: is_group(&survivors),
        survivors,
    })
}

/// Non-negative solutions of `x_coeff·a + y_coeff·b = target`, sorted by `a`.
pub fn diophantine_obstruction(x_coeff: u64, y_coeff: u64, target: u64) -> Vec<(u64, u64)> {
    assert!(x_coeff > 0 && y_coeff > 0, "coefficients must be positive");
    (0..=target / x_coeff)
        .filter_map(|a| {
            let rest = target - a * x_coeff;
            (rest % y_coeff == 0).then_some((a, rest / y_coeff))
        })
        .collect()
}
