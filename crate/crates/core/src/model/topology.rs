use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Structural tag of a topology. Tagged classes have closed-form ages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum TopologyClass {
    /// Directed chain `0 -> 1 -> ... -> n-1`.
    Line,
    /// Complete `r`-ary out-tree with `depth` levels (level `k` holds `r^k`
    /// nodes), numbered breadth-first so node `i` feeds `r*i+1 ..= r*i+r`.
    Tree {
        r: usize,
        depth: usize,
    },
    /// Center node 0 linked both ways to peripherals `1..=r`.
    Star {
        r: usize,
    },
    General,
}

/// Directed gossip graph over users `0..n`. An edge `(i, j)` means `i` can
/// forward its current version to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    edges: Vec<(usize, usize)>,
    class: TopologyClass,
    // (edge index, source) per destination
    incoming: Vec<Vec<(usize, usize)>>,
}

fn canonical_edges(n: usize, class: TopologyClass) -> Result<Vec<(usize, usize)>> {
    match class {
        TopologyClass::Line => Ok((1..n).map(|k| (k - 1, k)).collect()),
        TopologyClass::Tree { r, depth } => {
            let expected = tree_size(r, depth)?;
            if expected != n {
                return Err(Error::InvalidTopology(format!(
                    "tree(r={r}, depth={depth}) has {expected} nodes, got {n}"
                )));
            }
            Ok((1..n).map(|j| ((j - 1) / r, j)).collect())
        }
        TopologyClass::Star { r } => {
            if r == 0 || n != r + 1 {
                return Err(Error::InvalidTopology(format!(
                    "star(r={r}) needs r >= 1 and r+1 nodes, got {n}"
                )));
            }
            Ok((1..=r).flat_map(|j| [(0, j), (j, 0)]).collect())
        }
        TopologyClass::General => unreachable!("general topologies have no canonical edge set"),
    }
}

fn tree_size(r: usize, depth: usize) -> Result<usize> {
    if r < 2 || depth == 0 {
        return Err(Error::InvalidTopology(format!(
            "tree needs r >= 2 and depth >= 1, got r={r}, depth={depth}"
        )));
    }
    let mut total: usize = 0;
    let mut level: usize = 1;
    for k in 0..depth {
        total = total
            .checked_add(level)
            .ok_or_else(|| Error::InvalidTopology("tree too large".into()))?;
        if k + 1 < depth {
            level = level
                .checked_mul(r)
                .ok_or_else(|| Error::InvalidTopology("tree too large".into()))?;
        }
    }
    Ok(total)
}

impl Topology {
    /// Validates node bounds, self-loops and duplicates, and for tagged
    /// classes that `edges` is exactly the class's edge set (any order).
    pub fn new(n: usize, edges: Vec<(usize, usize)>, class: TopologyClass) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTopology(
                "topology needs at least one node".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &(i, j) in &edges {
            if i >= n || j >= n {
                return Err(Error::InvalidTopology(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(Error::InvalidTopology(format!("self-loop at node {i}")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidTopology(format!("duplicate edge ({i}, {j})")));
            }
        }
        if class != TopologyClass::General {
            let expected: BTreeSet<_> = canonical_edges(n, class)?.into_iter().collect();
            if expected != seen {
                let missing = expected.difference(&seen).next();
                let extra = seen.difference(&expected).next();
                return Err(Error::InvalidTopology(match (missing, extra) {
                    (_, Some(e)) => format!("edge {e:?} does not belong to {class:?}"),
                    (Some(e), None) => format!("{class:?} is missing edge {e:?}"),
                    (None, None) => unreachable!(),
                }));
            }
        }
        let mut incoming = vec![Vec::new(); n];
        for (idx, &(i, j)) in edges.iter().enumerate() {
            incoming[j].push((idx, i));
        }
        Ok(Self {
            n,
            edges,
            class,
            incoming,
        })
    }

    pub fn line(n: usize) -> Result<Self> {
        let edges = canonical_edges(n, TopologyClass::Line)?;
        Self::new(n, edges, TopologyClass::Line)
    }

    /// Complete `r`-ary tree with `depth` levels, `(r^depth - 1)/(r - 1)` nodes.
    pub fn tree(r: usize, depth: usize) -> Result<Self> {
        let n = tree_size(r, depth)?;
        let class = TopologyClass::Tree { r, depth };
        Self::new(n, canonical_edges(n, class)?, class)
    }

    pub fn star(r: usize) -> Result<Self> {
        let class = TopologyClass::Star { r };
        Self::new(r + 1, canonical_edges(r + 1, class)?, class)
    }

    pub fn general(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, edges, TopologyClass::General)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn class(&self) -> TopologyClass {
        self.class
    }

    /// `(edge index, source)` pairs feeding `node`.
    pub fn incoming(&self, node: usize) -> &[(usize, usize)] {
        &self.incoming[node]
    }

    /// Nodes reachable along directed edges from any node flagged in `sources`
    /// (sources included).
    pub fn reachable_from(&self, sources: &[bool]) -> Vec<bool> {
        let mut out_adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            out_adj[i].push(j);
        }
        let mut seen = sources.to_vec();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&i| seen[i]).collect();
        while let Some(i) = queue.pop_front() {
            for &j in &out_adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen
    }

    /// Level of `node` in a tagged tree (root is level 0).
    pub fn tree_level(&self, node: usize) -> Option<usize> {
        match self.class {
            TopologyClass::Tree { r, .. } if node < self.n => {
                let (mut level, mut first, mut width) = (0, 0usize, 1usize);
                while node >= first + width {
                    first += width;
                    width *= r;
                    level += 1;
                }
                Some(level)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_validate() {
        assert_eq!(Topology::line(5).unwrap().edges().len(), 4);
        let tree = Topology::tree(2, 4).unwrap();
        assert_eq!(tree.node_count(), 15);
        assert_eq!(tree.tree_level(0), Some(0));
        assert_eq!(tree.tree_level(2), Some(1));
        assert_eq!(tree.tree_level(3), Some(2));
        assert_eq!(tree.tree_level(14), Some(3));
        assert_eq!(Topology::tree(3, 3).unwrap().node_count(), 13);
        let star = Topology::star(3).unwrap();
        assert_eq!(star.node_count(), 4);
        assert_eq!(star.incoming(0).len(), 3);
        assert_eq!(star.incoming(2), &[(2, 0)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Topology::general(3, vec![(0, 3)]).is_err());
        assert!(Topology::general(3, vec![(1, 1)]).is_err());
        assert!(Topology::general(3, vec![(0, 1), (0, 1)]).is_err());
        assert!(Topology::general(0, vec![]).is_err());
        assert!(Topology::general(3, vec![(0, 1), (1, 0), (2, 1)]).is_ok());
    }

    #[test]
    fn tagged_classes_must_match_structure() {
        // a line tag with a non-chain edge
        assert!(Topology::new(3, vec![(0, 1), (1, 2), (0, 2)], TopologyClass::Line).is_err());
        assert!(Topology::new(3, vec![(0, 1), (2, 1)], TopologyClass::Line).is_err());
        assert!(Topology::new(3, vec![(1, 2), (0, 1)], TopologyClass::Line).is_ok());
        // a star missing a spoke
        let spokes = vec![(0, 1), (1, 0), (0, 2), (2, 0), (0, 3)];
        assert!(Topology::new(4, spokes, TopologyClass::Star { r: 3 }).is_err());
        assert!(Topology::new(
            3,
            vec![(0, 1), (0, 2)],
            TopologyClass::Tree { r: 2, depth: 2 }
        )
        .is_ok());
        assert!(Topology::new(
            3,
            vec![(0, 1), (1, 2)],
            TopologyClass::Tree { r: 2, depth: 2 }
        )
        .is_err());
        assert!(Topology::tree(1, 3).is_err());
        assert!(Topology::star(0).is_err());
    }

    #[test]
    fn reachability() {
        let line = Topology::line(4).unwrap();
        assert_eq!(
            line.reachable_from(&[false, true, false, false]),
            vec![false, true, true, true]
        );
        let g = Topology::general(3, vec![(0, 1)]).unwrap();
        assert_eq!(
            g.reachable_from(&[true, false, false]),
            vec![true, true, false]
        );
    }
}
