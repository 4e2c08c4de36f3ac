//! Mutable nerve used inside a principalization run. Blowing up touches only
//! the faces through the center, and the 1-skeleton is kept alongside.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::arrangement::Nerve;

#[derive(Debug, Clone)]
pub(crate) struct Complex {
    /// Maximal faces, each sorted.
    faces: Vec<Vec<usize>>,
    /// Ids of the faces containing each vertex.
    incidence: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl Complex {
    pub(crate) fn new(nerve: &Nerve) -> Self {
        let faces = nerve.maximal_sets().to_vec();
        let mut incidence = alloc::vec![Vec::new(); nerve.vertex_count()];
        let mut edges = BTreeSet::new();
        for (id, face) in faces.iter().enumerate() {
            for (k, &v) in face.iter().enumerate() {
                incidence[v].push(id);
                for &w in &face[k + 1..] {
                    edges.insert((v, w));
                }
            }
        }
        Complex {
            faces,
            incidence,
            edges,
        }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub(crate) fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Applies the blow-up rules at `{i, j}` (`i < j`, a nerve edge) and
    /// returns the neighbours of the new vertex, sorted.
    pub(crate) fn blow_up(&mut self, i: usize, j: usize) -> Vec<usize> {
        let e = self.vertex_count();
        let (short, other) = if self.incidence[i].len() <= self.incidence[j].len() {
            (i, j)
        } else {
            (j, i)
        };
        let mut through: Vec<usize> = self.incidence[short]
            .iter()
            .copied()
            .filter(|&f| self.faces[f].binary_search(&other).is_ok())
            .collect();
        through.sort_unstable();

        self.incidence.push(Vec::with_capacity(2 * through.len()));
        let mut star = Vec::new();
        for &f in &through {
            // Face f becomes F \ {j} ∪ {e}; the new face is F \ {i} ∪ {e}.
            let face = core::mem::take(&mut self.faces[f]);
            star.extend_from_slice(&face);
            let mut keep_i: Vec<usize> = face.iter().copied().filter(|&v| v != j).collect();
            let mut keep_j: Vec<usize> = face.into_iter().filter(|&v| v != i).collect();
            keep_i.push(e);
            keep_j.push(e);
            let g = self.faces.len();
            for &v in &keep_j {
                self.incidence[v].push(g);
            }
            self.incidence[e].push(f);
            self.faces[f] = keep_i;
            self.faces.push(keep_j);
        }
        self.incidence[j].retain(|f| through.binary_search(f).is_err());

        self.edges.remove(&(i, j));
        star.sort_unstable();
        star.dedup();
        for &k in &star {
            self.edges.insert((k, e));
        }
        star
    }

    pub(crate) fn to_nerve(&self) -> Nerve {
        Nerve::from_antichain_unchecked(self.vertex_count(), self.faces.clone())
    }
}
