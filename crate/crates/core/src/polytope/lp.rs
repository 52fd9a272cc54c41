//! Exact phase-1 simplex feasibility: does Ax = b admit x >= 0?
//!
//! Bland's rule on exact rationals, so termination is unconditional. All
//! geometric predicates in this crate reduce to this routine; there is no
//! epsilon anywhere.

use num::{Signed, Zero};

use crate::rat::{rat_int, Rat};

/// Feasibility of { x >= 0 : Ax = b } with A given by rows.
pub fn feasible_eq_nonneg(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // tableau rows: [A | I | b], with each row flipped so b >= 0
    let width = n + m + 1;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut t: Vec<Rat> = row
            .iter()
            .map(|v| if flip { -v } else { v.clone() })
            .collect();
        t.extend((0..m).map(|j| rat_int((j == i) as i64)));
        t.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs for minimizing the sum of artificials
    let mut cost = vec![rat_int(0); n];
    cost.extend(vec![rat_int(1); m]);
    cost.push(rat_int(0));
    for row in &rows {
        for (c, v) in cost.iter_mut().zip(row.iter()) {
            *c -= v;
        }
    }

    // Bland: the first column with negative reduced cost enters
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        // ratio test; ties broken by smallest basis index (Bland)
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if rows[i][enter].is_positive() {
                let ratio = &rows[i][width - 1] / &rows[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // phase-1 objective is bounded below by zero; unreachable
            debug_assert!(false, "unbounded phase-1 simplex");
            return false;
        };
        let pivot = rows[leave][enter].clone();
        for v in rows[leave].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = rows[leave].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&f * p);
            }
        }
        basis[leave] = enter;
    }
    // objective value is -cost[rhs]; feasible iff all artificials hit zero
    cost[width - 1].is_zero()
}
