use std::collections::BTreeSet;

use super::complex::{d1, E1Term};
use super::instance::SncInstance;
use crate::exactlinalg::{Gauss, Matrix};

/// Every failed instance invariant, as human-readable lines; empty means valid.
pub fn validate(inst: &SncInstance) -> Vec<String> {
    let mut issues = Vec::new();
    structure(inst, &mut issues);
    if !issues.is_empty() {
        return issues;
    }
    for stratum in &inst.strata {
        for piece in &stratum.pieces {
            degrees(inst, stratum.depth, piece, &mut issues);
        }
    }
    restrictions(inst, &mut issues);
    kahler(inst, &mut issues);
    if issues.is_empty() {
        complexes(inst, &mut issues);
    }
    issues
}

fn structure(inst: &SncInstance, issues: &mut Vec<String>) {
    let mut depths = BTreeSet::new();
    let mut ids = BTreeSet::new();
    for s in &inst.strata {
        if !depths.insert(s.depth) {
            issues.push(format!("stratum depth {} listed twice", s.depth));
        }
        for p in &s.pieces {
            if !ids.insert(p.id.clone()) {
                issues.push(format!("piece id {} is not unique", p.id));
            }
            if p.components.len() != s.depth {
                issues.push(format!(
                    "piece {} has {} components at depth {}",
                    p.id,
                    p.components.len(),
                    s.depth
                ));
            }
            if p.components.windows(2).any(|w| w[0] >= w[1]) {
                issues.push(format!(
                    "piece {} components are not strictly increasing",
                    p.id
                ));
            }
        }
    }
}

fn degrees(
    inst: &SncInstance,
    depth: usize,
    piece: &super::instance::Piece,
    issues: &mut Vec<String>,
) {
    let top = inst.top_degree(depth);
    for (&d, data) in &piece.cohomology {
        let at = format!("piece {} degree {d}", piece.id);
        let total: usize = data.hodge.values().sum();
        if total != data.rank {
            issues.push(format!(
                "{at}: Hodge numbers sum to {total}, rank is {}",
                data.rank
            ));
            continue;
        }
        for (&(p, q), &h) in &data.hodge {
            if p < 0 || q < 0 || (p + q) as u32 != d {
                issues.push(format!("{at}: type ({p},{q}) has wrong weight"));
            }
            if data.hodge.get(&(q, p)).copied().unwrap_or(0) != h {
                issues.push(format!("{at}: h^{{{p},{q}}} differs from h^{{{q},{p}}}"));
            }
        }
        let types = data.types();
        let j = &data.conj;
        if j.rows() != data.rank || j.cols() != data.rank {
            issues.push(format!("{at}: conjugation has wrong shape"));
            continue;
        }
        if (j * &j.conj()) != Matrix::identity(data.rank) {
            issues.push(format!("{at}: conjugation is not an involution"));
        }
        for c in 0..data.rank {
            for r in 0..data.rank {
                let (p, q) = types[c];
                if !j[(r, c)].is_zero() && types[r] != (q, p) {
                    issues.push(format!("{at}: conjugation does not swap Hodge types"));
                }
            }
        }
        let dual_deg = top - d as i64;
        let dual = piece.degree(dual_deg as u32);
        if dual.rank != data.rank {
            issues.push(format!(
                "{at}: Poincaré duality fails (rank {} vs {})",
                data.rank, dual.rank
            ));
            continue;
        }
        let g = &data.gram.coeffs;
        if data.rank > 0 && g.det().is_zero() {
            issues.push(format!("{at}: cup-product Gram is degenerate"));
        }
        let sign = if d % 2 == 0 {
            Gauss::one()
        } else {
            -Gauss::one()
        };
        if g != &dual.gram.coeffs.transpose().scale(&sign) {
            issues.push(format!("{at}: Gram is not graded-symmetric"));
        }
        let dual_types = dual.types();
        let half = (top / 2) as i32;
        for r in 0..data.rank {
            for c in 0..data.rank {
                let (a, b) = (types[r], dual_types[c]);
                if !g[(r, c)].is_zero() && (a.0 + b.0 != half || a.1 + b.1 != half) {
                    issues.push(format!("{at}: Gram pairs incompatible Hodge types"));
                }
            }
        }
        if &(&j.transpose() * g) * &dual.conj != g.conj() {
            issues.push(format!(
                "{at}: Gram is not compatible with the real structure"
            ));
        }
    }
}

fn restrictions(inst: &SncInstance, issues: &mut Vec<String>) {
    for r in &inst.restrictions {
        let at = format!("restriction {} -> {} degree {}", r.from, r.to, r.degree);
        let (Some(from), Some(to)) = (inst.piece(&r.from), inst.piece(&r.to)) else {
            issues.push(format!("{at}: unknown piece"));
            continue;
        };
        if to.components.len() != from.components.len() + 1
            || !from.components.iter().all(|c| to.components.contains(c))
        {
            issues.push(format!(
                "{at}: target is not a codimension-one stratum of the source"
            ));
            continue;
        }
        let (src, dst) = (from.degree(r.degree), to.degree(r.degree));
        let (ts, tt) = (src.types(), dst.types());
        for (row, t_row) in tt.iter().enumerate() {
            for (col, t_col) in ts.iter().enumerate() {
                if !r.matrix[(row, col)].is_zero() && t_col != t_row {
                    issues.push(format!("{at}: does not preserve Hodge types"));
                }
            }
        }
        if &r.matrix * &src.conj != &dst.conj * &r.matrix.conj() {
            issues.push(format!("{at}: not defined over the reals"));
        }
    }
}

fn kahler(inst: &SncInstance, issues: &mut Vec<String>) {
    let Some(k) = &inst.kahler else { return };
    for (id, ops) in k {
        let Some(piece) = inst.piece(id) else {
            issues.push(format!("Kähler data for unknown piece {id}"));
            continue;
        };
        for (&d, op) in ops {
            let (src, dst) = (piece.degree(d), piece.degree(d + 2));
            let (ts, tt) = (src.types(), dst.types());
            for row in 0..dst.rank {
                for col in 0..src.rank {
                    if !op[(row, col)].is_zero() && (ts[col].0 + 1, ts[col].1 + 1) != tt[row] {
                        issues.push(format!(
                            "Kähler operator on {id} degree {d} is not of type (1,1)"
                        ));
                    }
                }
            }
        }
        let depth = piece.components.len();
        let half = (inst.top_degree(depth) / 2) as u32;
        let h0 = piece.degree(0);
        if h0.rank != 1 || !(0..half).all(|d| ops.contains_key(&(2 * d))) {
            continue;
        }
        let mut v = vec![Gauss::one()];
        for d in 0..half {
            v = ops[&(2 * d)].mul_vec(&v);
        }
        let volume: Gauss = h0
            .gram
            .coeffs
            .row(0)
            .iter()
            .zip(&v)
            .map(|(a, b)| a * b)
            .sum();
        if volume.real_sign() != Some(1) {
            issues.push(format!(
                "Kähler class on {id} has non-positive volume {volume}"
            ));
        }
    }
}

fn complexes(inst: &SncInstance, issues: &mut Vec<String>) {
    let n = inst.fiber_dim as i64;
    for m in 0..=2 * n {
        for r in -(n as i32)..=(n as i32) {
            let first = match d1(inst, m, r) {
                Ok(x) => x,
                Err(e) => {
                    issues.push(format!("d1 on H^{m}(Gr_{r}): {e}"));
                    return;
                }
            };
            let second = match d1(inst, m + 1, r - 1) {
                Ok(x) => x,
                Err(e) => {
                    issues.push(format!("d1 on H^{}(Gr_{}): {e}", m + 1, r - 1));
                    return;
                }
            };
            if !(&second * &first).is_zero() {
                issues.push(format!("d1∘d1 ≠ 0 starting at H^{m}(Gr_{r})"));
            }
            let (src, dst) = (E1Term::new(inst, m, r), E1Term::new(inst, m + 1, r - 1));
            let (ts, tt) = (src.types(inst), dst.types(inst));
            let mut bad = false;
            for row in 0..dst.dim {
                for col in 0..src.dim {
                    bad |= !first[(row, col)].is_zero() && ts[col] != tt[row];
                }
            }
            if bad {
                issues.push(format!("d1 on H^{m}(Gr_{r}) does not preserve Hodge types"));
            }
        }
    }
}
