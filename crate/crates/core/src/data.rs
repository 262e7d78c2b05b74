//! Data sets shipped with the crate: the 49 conflict graphs on 11 vertices,
//! the 12-point 11-universal set, the 17-point set for 4-connected
//! triangulations on 17 vertices, the order type on three points, and the
//! two 4-connected triangulations on 8 vertices in graph6.

use crate::chirotope::{AbstractOrderType, PointSet};
use crate::graphs::{parse_edge_list_file, parse_graph6_file, Graph};

pub const CONFLICT_G: &str = include_str!("../data/conflict_g27.txt");
pub const CONFLICT_H: &str = include_str!("../data/conflict_h22.txt");
pub const CONFLICT_ALL: &str = include_str!("../data/n11_conflicting49.txt");
pub const LISTING1_POINTS: &str = include_str!("../data/listing1_points.txt");
pub const LISTING2_POINTS: &str = include_str!("../data/listing2_points.txt");
pub const N3_ORDER_TYPES: &[u8] = include_bytes!("../data/n3_order_types.bin");
pub const N8C4_GRAPH6: &str = include_str!("../data/n8c4.g6");

fn graphs(text: &str) -> Vec<Graph> {
    parse_edge_list_file(text).expect("bundled edge lists are valid")
}

/// `G_1 .. G_27`.
pub fn conflict_g() -> Vec<Graph> {
    graphs(CONFLICT_G)
}

/// `H_1 .. H_22`.
pub fn conflict_h() -> Vec<Graph> {
    graphs(CONFLICT_H)
}

/// The full conflict collection, G graphs first.
pub fn conflict_all() -> Vec<Graph> {
    graphs(CONFLICT_ALL)
}

pub fn listing1() -> PointSet {
    PointSet::parse(LISTING1_POINTS).expect("bundled points are valid")
}

pub fn listing2() -> PointSet {
    PointSet::parse(LISTING2_POINTS).expect("bundled points are valid")
}

pub fn listing1_order_type() -> AbstractOrderType {
    AbstractOrderType::from_points(&listing1()).expect("listing 1 is in general position")
}

pub fn n8c4() -> Vec<Graph> {
    parse_graph6_file(N8C4_GRAPH6).expect("bundled graph6 is valid")
}

/// `G_12`: contains the two-K4 gadget that forces nested triangles, and
/// serves as the filter graph for the structural property of 11-universal
/// sets.
pub fn property1_graph() -> Graph {
    conflict_g().swap_remove(11)
}

/// `G_10`: a stacked triangulation on 11 vertices in which every face has a
/// vertex of degree three.
pub fn property2_graph() -> Graph {
    conflict_g().swap_remove(9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{emit_edge_list, faces_all_have_degree3_vertex, is_triangulation_candidate, recognize_stacked};

    #[test]
    fn bundled_graphs() {
        let g = conflict_g();
        let h = conflict_h();
        assert_eq!((g.len(), h.len()), (27, 22));
        let all: Vec<Graph> = g.into_iter().chain(h).collect();
        assert_eq!(all, conflict_all());
        for (i, x) in all.iter().enumerate() {
            assert_eq!(x.n(), 11, "graph {i}");
            assert!(is_triangulation_candidate(x), "graph {i}");
            let s = recognize_stacked(x).expect("stacked");
            assert_eq!(&s.original_graph(), x, "graph {i}");
        }
        for line in CONFLICT_ALL.lines() {
            assert_eq!(emit_edge_list(&crate::graphs::parse_edge_list(line).unwrap()), line);
        }
    }

    #[test]
    fn bundled_points() {
        assert_eq!(listing1().len(), 12);
        assert_eq!(listing2().len(), 17);
        listing1().check_general_position().unwrap();
        listing2().check_general_position().unwrap();
        assert_eq!(N3_ORDER_TYPES, &[0]);
        assert_eq!(n8c4().len(), 2);
    }

    #[test]
    fn property2_graph_faces() {
        assert_eq!(faces_all_have_degree3_vertex(&property2_graph()), Ok(true));
    }
}
