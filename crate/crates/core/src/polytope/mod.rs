//! Exact rational polyhedral kernel: affine dimension, vertex and face
//! extraction for hulls of dimension at most 3, pointed-cone tests, and a
//! supporting-functional face predicate.
//!
//! Everything is decided by exact feasibility (phase-1 simplex over the
//! rationals) or exact elimination. Facets are found by brute force over
//! hyperplanes through affinely independent vertex subsets, checked for
//! one-sidedness; edges of a 3-polytope are recovered as 1-faces via
//! `is_face`. Input sizes stay small (at most a few dozen points), which is
//! what this strategy is sized for.

mod lp;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_columns;
use crate::rat::{rat_int, rat_to_f64, Rat};
use crate::weyl::{QVec, Word};

pub use lp::feasible_eq_nonneg;

/// Sorted, deduplicated copy of a point multiset.
pub fn dedup_points(points: &[QVec]) -> Vec<QVec> {
    let set: BTreeSet<QVec> = points.iter().cloned().collect();
    set.into_iter().collect()
}

/// Dimension of the affine hull: rank of {v_i − v_0}.
pub fn affine_dim(points: &[QVec]) -> Result<usize> {
    let unique = dedup_points(points);
    let Some(base) = unique.first() else {
        return Err(Error::EmptyInput);
    };
    let mut basis: Vec<QVec> = Vec::new();
    for p in &unique[1..] {
        let diff = p.sub(base);
        if solve_columns(&basis, &diff).is_none() {
            basis.push(diff);
        }
    }
    Ok(basis.len())
}

/// Is `v` expressible as a convex combination of `others`? Exact phase-1
/// feasibility of sum λ_k p_k = v, sum λ_k = 1, λ >= 0.
fn in_convex_hull(v: &QVec, others: &[QVec]) -> bool {
    let n = v.n();
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| others.iter().map(|p| p.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![rat_int(1); others.len()]);
    let mut rhs: Vec<Rat> = v.coords().to_vec();
    rhs.push(rat_int(1));
    feasible_eq_nonneg(&rows, &rhs)
}

/// The extreme points of the input set: points not in the hull of the rest.
/// Returned sorted and deduplicated.
pub fn vertices(points: &[QVec]) -> Vec<QVec> {
    let unique = dedup_points(points);
    unique
        .iter()
        .filter(|v| {
            let others: Vec<QVec> = unique.iter().filter(|p| p != v).cloned().collect();
            !in_convex_hull(v, &others)
        })
        .cloned()
        .collect()
}

/// Does the cone spanned by the generators contain a line? True exactly when
/// some nontrivial nonnegative combination of the nonzero generators is zero.
pub fn cone_contains_line(generators: &[QVec]) -> bool {
    let gens: Vec<&QVec> = generators.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = gens.first() else {
        return false;
    };
    let n = first.n();
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| gens.iter().map(|g| g.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![rat_int(1); gens.len()]);
    let mut rhs = vec![rat_int(0); n];
    rhs.push(rat_int(1));
    feasible_eq_nonneg(&rows, &rhs)
}

/// Membership of v in the cone of nonnegative combinations of the generators.
pub fn in_cone(v: &QVec, generators: &[QVec]) -> bool {
    let n = v.n();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|r| generators.iter().map(|g| g.coords()[r].clone()).collect())
        .collect();
    feasible_eq_nonneg(&rows, v.coords())
}

/// Equality of two cones, decided by mutual generator membership.
pub fn cones_equal(a: &[QVec], b: &[QVec]) -> bool {
    a.iter().all(|g| in_cone(g, b)) && b.iter().all(|g| in_cone(g, a))
}

/// Does some exact linear functional attain its maximum over `points`
/// exactly on `subset`?
pub fn is_face(points: &[QVec], subset: &[QVec]) -> Result<bool> {
    let unique = dedup_points(points);
    let sub = dedup_points(subset);
    if sub.iter().any(|s| !unique.contains(s)) {
        return Err(Error::SubsetNotContained);
    }
    let Some(p0) = sub.first() else {
        return Ok(false);
    };
    let n = p0.n();
    // functional c = c+ − c−; equality on the subset, slack-forced strict
    // separation (≤ −1 after scaling) outside it
    let outside: Vec<&QVec> = unique.iter().filter(|p| !sub.contains(p)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let width = 2 * n + outside.len();
    for p in sub.iter().skip(1) {
        let d = p.sub(p0);
        let mut row = Vec::with_capacity(width);
        row.extend(d.coords().iter().cloned());
        row.extend(d.coords().iter().map(|x| -x));
        row.extend(vec![rat_int(0); outside.len()]);
        rows.push(row);
        rhs.push(rat_int(0));
    }
    for (k, p) in outside.iter().enumerate() {
        let d = p.sub(p0);
        let mut row = Vec::with_capacity(width);
        row.extend(d.coords().iter().cloned());
        row.extend(d.coords().iter().map(|x| -x));
        row.extend((0..outside.len()).map(|j| rat_int((j == k) as i64)));
        rows.push(row);
        rhs.push(rat_int(-1));
    }
    Ok(feasible_eq_nonneg(&rows, &rhs))
}

/// Expected affine dimension of the moment polytope for the reference clan:
/// p + q − 1 when the letter p occurs in Q, else p + q − 2.
pub fn predicted_dim(p: usize, q: usize, word: &Word) -> usize {
    if word.contains_letter(p) {
        p + q - 1
    } else {
        (p + q).saturating_sub(2)
    }
}

/// Hull data at desk scale. Edges and the 2-face count are populated for
/// affine dimension at most 3; higher dimensions report vertices only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeSummary {
    pub ambient_n: usize,
    pub affine_dim: usize,
    pub input_point_count: usize,
    pub vertex_count: usize,
    pub vertices: Vec<QVec>,
    /// Index pairs into `vertices`, present for affine_dim <= 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_face_count: Option<usize>,
}

impl PolytopeSummary {
    pub fn fvector(&self) -> (usize, usize, usize, usize) {
        (
            self.affine_dim,
            self.vertex_count,
            self.edge_count.unwrap_or(0),
            self.two_face_count.unwrap_or(0),
        )
    }
}

/// Coordinates of the points inside their own affine hull, exactly.
fn affine_coordinates(unique: &[QVec]) -> (usize, Vec<QVec>) {
    let base = &unique[0];
    let mut basis: Vec<QVec> = Vec::new();
    for p in &unique[1..] {
        let diff = p.sub(base);
        if solve_columns(&basis, &diff).is_none() {
            basis.push(diff);
        }
    }
    let d = basis.len();
    let reduced = unique
        .iter()
        .map(|p| {
            let coords = solve_columns(&basis, &p.sub(base)).expect("in affine hull");
            QVec::new(coords)
        })
        .collect();
    (d, reduced)
}

/// One nonzero vector orthogonal to all of the given d−1 difference vectors
/// in R^d, or None when they are dependent.
fn hyperplane_normal(diffs: &[QVec], d: usize) -> Option<QVec> {
    // row-reduce the (d−1) x d system; a unique free column gives the normal
    let mut rows: Vec<Vec<Rat>> = diffs.iter().map(|v| v.coords().to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if r != d - 1 {
        return None;
    }
    let free = (0..d).find(|c| !pivots.contains(c)).expect("one free column");
    let mut normal = vec![rat_int(0); d];
    normal[free] = rat_int(1);
    for (row, &c) in pivots.iter().enumerate() {
        normal[c] = -&rows[row][free];
    }
    Some(QVec::new(normal))
}

/// All facets of the full-dimensional point set in R^d, as sorted index sets
/// into `reduced`. Brute force: every hyperplane through d affinely
/// independent vertices, kept when all points lie on one side.
fn facets(reduced: &[QVec], vertex_idx: &[usize], d: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for combo in vertex_idx.iter().combinations(d) {
        let base = &reduced[*combo[0]];
        let diffs: Vec<QVec> = combo[1..].iter().map(|&&i| reduced[i].sub(base)).collect();
        let Some(normal) = hyperplane_normal(&diffs, d) else {
            continue;
        };
        let values: Vec<Rat> = reduced.iter().map(|p| p.sub(base).dot(&normal)).collect();
        let one_sided = values.iter().all(|v| !v.is_negative())
            || values.iter().all(|v| !v.is_positive());
        if one_sided {
            let face: Vec<usize> = (0..reduced.len())
                .filter(|&i| values[i].is_zero())
                .collect();
            out.insert(face);
        }
    }
    out
}

/// Input points lying on the closed segment [a, b], exactly.
fn points_on_segment(unique: &[QVec], a: &QVec, b: &QVec) -> Vec<QVec> {
    let dir = b.sub(a);
    unique
        .iter()
        .filter(|p| {
            let d = p.sub(a);
            match solve_columns(std::slice::from_ref(&dir), &d) {
                Some(t) => {
                    let t = &t[0];
                    !t.is_negative() && *t <= rat_int(1)
                }
                None => false,
            }
        })
        .cloned()
        .collect()
}

/// Full hull summary. Exact counts; for affine dimension above 3 only the
/// vertices and the dimension are reported.
pub fn hull_summary(points: &[QVec]) -> Result<PolytopeSummary> {
    let unique = dedup_points(points);
    if unique.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ambient_n = unique[0].n();
    let input_point_count = points.len();
    let verts = vertices(&unique);
    let vert_index: BTreeMap<&QVec, usize> =
        verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let (d, reduced) = affine_coordinates(&unique);

    let mut summary = PolytopeSummary {
        ambient_n,
        affine_dim: d,
        input_point_count,
        vertex_count: verts.len(),
        vertices: verts.clone(),
        edges: None,
        edge_count: None,
        two_face_count: None,
    };
    match d {
        0 => {
            summary.edges = Some(Vec::new());
            summary.edge_count = Some(0);
            summary.two_face_count = Some(0);
        }
        1 => {
            debug_assert_eq!(verts.len(), 2);
            summary.edges = Some(vec![(0, 1)]);
            summary.edge_count = Some(1);
            summary.two_face_count = Some(0);
        }
        2 | 3 => {
            let vertex_unique_idx: Vec<usize> = (0..unique.len())
                .filter(|&i| vert_index.contains_key(&unique[i]))
                .collect();
            let face_sets = facets(&reduced, &vertex_unique_idx, d);
            let facet_vertex_sets: Vec<Vec<usize>> = face_sets
                .iter()
                .map(|f| {
                    f.iter()
                        .filter_map(|&i| vert_index.get(&unique[i]).copied())
                        .sorted()
                        .collect()
                })
                .collect();
            let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
            if d == 2 {
                // each facet of a polygon is an edge with exactly two vertices
                for fv in &facet_vertex_sets {
                    debug_assert_eq!(fv.len(), 2, "polygon facet with {} vertices", fv.len());
                    edges.insert((fv[0], fv[1]));
                }
                summary.two_face_count = Some(1);
            } else {
                // candidate edges: vertex pairs shared by two distinct facets,
                // confirmed as 1-faces by the supporting-functional test
                let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
                for (i, a) in facet_vertex_sets.iter().enumerate() {
                    for b in facet_vertex_sets.iter().skip(i + 1) {
                        let shared: Vec<usize> =
                            a.iter().filter(|v| b.contains(v)).copied().collect();
                        if shared.len() == 2 {
                            candidates.insert((shared[0], shared[1]));
                        }
                    }
                }
                for (i, j) in candidates {
                    let seg = points_on_segment(&unique, &verts[i], &verts[j]);
                    if is_face(&unique, &seg)? {
                        edges.insert((i, j));
                    }
                }
                summary.two_face_count = Some(face_sets.len());
            }
            summary.edge_count = Some(edges.len());
            summary.edges = Some(edges.into_iter().collect());
        }
        _ => {}
    }
    if let (2..=3, Some(e), Some(f)) = (d, summary.edge_count, summary.two_face_count) {
        let v = summary.vertex_count;
        debug_assert!(
            if d == 3 { v + f == e + 2 } else { v == e && f == 1 },
            "Euler check failed: d={d} V={v} E={e} F={f}"
        );
    }
    Ok(summary)
}

/// OFF-format text for hulls of affine dimension at most 3, for external
/// viewers. Coordinates are emitted as decimals of the exact values.
pub fn off_geometry(points: &[QVec]) -> Result<String> {
    let unique = dedup_points(points);
    if unique.is_empty() {
        return Err(Error::EmptyInput);
    }
    let summary = hull_summary(&unique)?;
    let d = summary.affine_dim;
    if d > 3 {
        return Err(Error::EnumerationTooLarge { cap: 3, got: d });
    }
    let (_, reduced) = affine_coordinates(&unique);
    let vert_reduced: Vec<QVec> = summary
        .vertices
        .iter()
        .map(|v| {
            let at = unique.iter().position(|p| p == v).expect("vertex is a point");
            reduced[at].clone()
        })
        .collect();
    let coords3 = |v: &QVec| -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, c) in v.coords().iter().enumerate().take(3) {
            out[k] = rat_to_f64(c);
        }
        out
    };
    let faces: Vec<Vec<usize>> = match d {
        3 => facet_cycles(&summary, &vert_reduced),
        2 => vec![polygon_cycle(&summary)],
        _ => Vec::new(),
    };
    let mut text = String::from("OFF\n");
    text.push_str(&format!(
        "{} {} {}\n",
        summary.vertex_count,
        faces.len(),
        summary.edge_count.unwrap_or(0)
    ));
    for v in &vert_reduced {
        let [x, y, z] = coords3(v);
        text.push_str(&format!("{x} {y} {z}\n"));
    }
    for face in &faces {
        text.push_str(&face.len().to_string());
        for idx in face {
            text.push_str(&format!(" {idx}"));
        }
        text.push('\n');
    }
    Ok(text)
}

/// Order each 3-polytope facet's vertices into a boundary cycle.
fn facet_cycles(summary: &PolytopeSummary, vert_reduced: &[QVec]) -> Vec<Vec<usize>> {
    let edges = summary.edges.as_ref().expect("dim 3 has edges");
    // group vertices by facet: recompute facets on vertex coordinates
    let verts_idx: Vec<usize> = (0..vert_reduced.len()).collect();
    let face_sets = facets(vert_reduced, &verts_idx, 3);
    let mut out = Vec::new();
    for face in face_sets {
        let in_face: BTreeSet<usize> = face.iter().copied().collect();
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in edges {
            if in_face.contains(&a) && in_face.contains(&b) {
                adjacency.entry(a).or_default().push(b);
                adjacency.entry(b).or_default().push(a);
            }
        }
        let start = *face.first().expect("facet nonempty");
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut at = start;
        loop {
            let next = adjacency[&at]
                .iter()
                .copied()
                .find(|&v| v != prev)
                .expect("facet boundary is a cycle");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = at;
            at = next;
        }
        out.push(cycle);
    }
    out
}

/// Order a polygon's vertices along its boundary.
fn polygon_cycle(summary: &PolytopeSummary) -> Vec<usize> {
    let edges = summary.edges.as_ref().expect("dim 2 has edges");
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let start = 0;
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut at = start;
    loop {
        let next = adjacency[&at]
            .iter()
            .copied()
            .find(|&v| v != prev)
            .expect("polygon boundary is a cycle");
        if next == start {
            break;
        }
        cycle.push(next);
        prev = at;
        at = next;
    }
    cycle
}
