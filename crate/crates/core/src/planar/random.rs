//! Seeded random plane graphs: grow a triangulation by inserting vertices
//! into uniformly chosen faces, then delete uniformly chosen edges.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PlaneEmbedding;

/// Random triangulation on `n >= 3` vertices.
pub fn random_triangulation<R: Rng>(n: usize, rng: &mut R) -> PlaneEmbedding {
    assert!(n >= 3, "a triangulation needs three vertices");
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2]];
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        insert_after(&mut rot[a], c, x);
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        rot.push(vec![a, c, b]);
        faces[i] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    PlaneEmbedding::from_rotation(rot).expect("face insertion keeps the embedding planar")
}

fn insert_after(list: &mut Vec<usize>, after: usize, x: usize) {
    let i = list.iter().position(|&y| y == after).expect("neighbour present");
    list.insert(i + 1, x);
}

/// Delete `count` distinct edges chosen uniformly, keeping the induced
/// rotation.
pub fn delete_random_edges<R: Rng>(emb: &PlaneEmbedding, count: usize, rng: &mut R) -> PlaneEmbedding {
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(emb.size());
    for u in 0..emb.order() {
        for &v in emb.rotation(u) {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(rng);
    let mut rot = emb.rotations().to_vec();
    for &(u, v) in edges.iter().take(count) {
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
    }
    PlaneEmbedding::from_rotation(rot).expect("deleting edges keeps the embedding planar")
}

/// Triangulation on `n` vertices with a random number of edges removed,
/// reproducible from `seed`.
pub fn random_plane_graph(n: usize, seed: u64) -> PlaneEmbedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tri = random_triangulation(n, &mut rng);
    let count = rng.gen_range(0..=tri.size());
    delete_random_edges(&tri, count, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulations_are_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..30 {
            let t = random_triangulation(n, &mut rng);
            assert_eq!(t.size(), 3 * n - 6);
            assert!(t.faces().faces.iter().all(|f| f.size == 3));
        }
    }

    #[test]
    fn reproducible() {
        assert_eq!(random_plane_graph(12, 3), random_plane_graph(12, 3));
    }
}
