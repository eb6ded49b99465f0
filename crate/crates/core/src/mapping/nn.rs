//! 2D kd-tree for nearest-neighbor queries over point clouds.
//!
//! Built once per cloud and queried many times by the Chamfer metric. The
//! brute-force all-pairs scan stays in the test suite as the independent
//! reference for this structure.

/// Balanced kd-tree over owned 2D points.
pub struct KdTree {
    points: Vec<[f64; 2]>,
    /// Flat node list in build order: (point index, split axis).
    nodes: Vec<(u32, u8)>,
    /// Children as indices into `nodes`; u32::MAX marks a missing child.
    children: Vec<[u32; 2]>,
}

const NO_CHILD: u32 = u32::MAX;

impl KdTree {
    pub fn build(points: &[[f64; 2]]) -> Self {
        let mut idx: Vec<u32> = (0..points.len() as u32).collect();
        let mut tree = KdTree {
            points: points.to_vec(),
            nodes: Vec::with_capacity(points.len()),
            children: Vec::with_capacity(points.len()),
        };
        if !idx.is_empty() {
            tree.build_rec(&mut idx, 0);
        }
        tree
    }

    fn build_rec(&mut self, idx: &mut [u32], axis: u8) -> u32 {
        let mid = idx.len() / 2;
        let pts = &self.points;
        idx.select_nth_unstable_by(mid, |&a, &b| {
            pts[a as usize][axis as usize]
                .partial_cmp(&pts[b as usize][axis as usize])
                .expect("finite coordinates")
        });
        let node = self.nodes.len() as u32;
        self.nodes.push((idx[mid], axis));
        self.children.push([NO_CHILD, NO_CHILD]);
        let next = 1 - axis;
        let (left, right) = idx.split_at_mut(mid);
        if !left.is_empty() {
            let l = self.build_rec(left, next);
            self.children[node as usize][0] = l;
        }
        if right.len() > 1 {
            let r = self.build_rec(&mut right[1..], next);
            self.children[node as usize][1] = r;
        }
        node
    }

    /// Squared distance from `q` to its nearest stored point.
    pub fn nearest_sq(&self, q: [f64; 2]) -> f64 {
        debug_assert!(!self.nodes.is_empty(), "query on empty tree");
        let mut best = f64::INFINITY;
        self.search(0, q, &mut best);
        best
    }

    fn search(&self, node: u32, q: [f64; 2], best: &mut f64) {
        let (pi, axis) = self.nodes[node as usize];
        let p = self.points[pi as usize];
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        let d = dx * dx + dy * dy;
        if d < *best {
            *best = d;
        }
        let delta = q[axis as usize] - p[axis as usize];
        let (near, far) = if delta < 0.0 { (0, 1) } else { (1, 0) };
        let kids = self.children[node as usize];
        if kids[near] != NO_CHILD {
            self.search(kids[near], q, best);
        }
        if kids[far] != NO_CHILD && delta * delta < *best {
            self.search(kids[far], q, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_nearest_sq(points: &[[f64; 2]], q: [f64; 2]) -> f64 {
        points
            .iter()
            .map(|p| {
                let dx = p[0] - q[0];
                let dy = p[1] - q[1];
                dx * dx + dy * dy
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn matches_brute_force_on_random_clouds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let n = rng.gen_range(1..200);
            let points: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)])
                .collect();
            let tree = KdTree::build(&points);
            for _ in 0..50 {
                let q = [rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0)];
                let got = tree.nearest_sq(q);
                let expect = brute_nearest_sq(&points, q);
                assert!(
                    (got - expect).abs() <= 1e-12 * expect.max(1.0),
                    "kd {got} vs brute {expect}"
                );
            }
        }
    }

    #[test]
    fn duplicate_points_are_fine() {
        let points = vec![[1.0, 1.0]; 9];
        let tree = KdTree::build(&points);
        assert_eq!(tree.nearest_sq([1.0, 1.0]), 0.0);
        assert!((tree.nearest_sq([2.0, 1.0]) - 1.0).abs() < 1e-15);
    }
}
