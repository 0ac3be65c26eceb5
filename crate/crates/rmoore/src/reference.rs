//! Embedded best-known results for small `(r, z)` pairs, used by the `table`
//! subcommand to compare fresh runs against the published record.
//!
//! Two rows carry a recorded 1-norm that is inconsistent with the status
//! identity `N1 = status - M * s_{r,z,2}` for totally regular graphs; those
//! are reported as annotations, never as hard mismatches.

use crate::moore::moore_status;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub r: usize,
    pub z: usize,
    pub order: u64,
    pub edges: u64,
    pub arcs: u64,
    pub min_status: u64,
    pub norm1: u64,
    /// Whether the recorded status is known to be the global minimum.
    pub optimal: bool,
}

pub const BEST_KNOWN: [ReferenceRow; 13] = [
    ReferenceRow { r: 1, z: 1, order: 6, edges: 3, arcs: 6, min_status: 50, norm1: 2, optimal: true },
    ReferenceRow { r: 2, z: 1, order: 11, edges: 11, arcs: 11, min_status: 195, norm1: 8, optimal: true },
    ReferenceRow { r: 1, z: 2, order: 12, edges: 6, arcs: 24, min_status: 229, norm1: 2, optimal: true },
    ReferenceRow { r: 3, z: 1, order: 18, edges: 27, arcs: 18, min_status: 550, norm1: 10, optimal: false },
    ReferenceRow { r: 2, z: 2, order: 19, edges: 19, arcs: 38, min_status: 633, norm1: 25, optimal: false },
    ReferenceRow { r: 1, z: 3, order: 20, edges: 10, arcs: 60, min_status: 689, norm1: 9, optimal: false },
    ReferenceRow { r: 3, z: 2, order: 28, edges: 42, arcs: 56, min_status: 1457, norm1: 85, optimal: false },
    ReferenceRow { r: 2, z: 3, order: 29, edges: 29, arcs: 87, min_status: 1579, norm1: 100, optimal: false },
    ReferenceRow { r: 3, z: 3, order: 40, edges: 60, arcs: 120, min_status: 3190, norm1: 310, optimal: false },
    ReferenceRow { r: 4, z: 1, order: 27, edges: 54, arcs: 27, min_status: 1348, norm1: 79, optimal: false },
    ReferenceRow { r: 4, z: 2, order: 39, edges: 78, arcs: 78, min_status: 3082, norm1: 354, optimal: false },
    ReferenceRow { r: 2, z: 4, order: 41, edges: 41, arcs: 164, min_status: 3473, norm1: 439, optimal: false },
    ReferenceRow { r: 5, z: 1, order: 38, edges: 95, arcs: 38, min_status: 2802, norm1: 218, optimal: false },
];

pub fn find(r: usize, z: usize) -> Option<&'static ReferenceRow> {
    BEST_KNOWN.iter().find(|row| row.r == r && row.z == z)
}

/// The 1-norm implied by the recorded status through the status identity.
pub fn implied_norm1(row: &ReferenceRow) -> u64 {
    let (_, s_total) = moore_status(row.r, row.z, 2).expect("reference rows are valid");
    row.min_status - s_total
}

/// Annotation for rows whose recorded 1-norm contradicts the status identity.
pub fn annotation(row: &ReferenceRow) -> Option<String> {
    let implied = implied_norm1(row);
    (implied != row.norm1).then(|| {
        format!(
            "recorded 1-norm {} is inconsistent with the status identity: \
             {} - {} = {}; reporting the self-consistent value",
            row.norm1,
            row.min_status,
            row.min_status - implied,
            implied
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moore::moore_bound;

    #[test]
    fn orders_match_the_moore_bound() {
        for row in &BEST_KNOWN {
            assert_eq!(moore_bound(row.r, row.z, 2).unwrap(), row.order, "({},{})", row.r, row.z);
        }
    }

    #[test]
    fn link_counts_follow_total_regularity() {
        for row in &BEST_KNOWN {
            assert_eq!(row.edges, row.order * row.r as u64 / 2, "({},{})", row.r, row.z);
            assert_eq!(row.arcs, row.order * row.z as u64, "({},{})", row.r, row.z);
        }
    }

    #[test]
    fn exactly_two_rows_are_annotated() {
        let annotated: Vec<(usize, usize, u64)> = BEST_KNOWN
            .iter()
            .filter(|row| annotation(row).is_some())
            .map(|row| (row.r, row.z, implied_norm1(row)))
            .collect();
        assert_eq!(annotated, vec![(1, 2, 1), (4, 2, 352)]);
    }

    #[test]
    fn consistent_rows_satisfy_the_identity() {
        for row in &BEST_KNOWN {
            if annotation(row).is_none() {
                assert_eq!(implied_norm1(row), row.norm1);
            }
        }
    }
}
