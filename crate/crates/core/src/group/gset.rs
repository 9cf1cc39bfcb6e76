use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{are_conjugate, FiniteGroup, Subgroup};

/// A finite left `G`-set on points `0..size`.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    act: Vec<u32>,
}

impl GSet {
    /// `table[g][p] = g·p`; checked to be a left action.
    pub fn new(group: Arc<FiniteGroup>, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != group.order() {
            return Err(Error::InvalidArgument("action table needs one row per group element".into()));
        }
        let size = table.first().map_or(0, Vec::len);
        if size == 0 || table.iter().any(|r| r.len() != size || r.iter().any(|&p| p >= size)) {
            return Err(Error::InvalidArgument("action table rows must be maps of 0..size".into()));
        }
        let act = table.into_iter().flatten().map(|p| p as u32).collect();
        let s = GSet { group, size, act };
        s.check_action()?;
        Ok(s)
    }

    pub fn check_action(&self) -> Result<()> {
        let g = &self.group;
        for p in 0..self.size {
            if self.act(g.identity(), p) != p {
                return Err(Error::InvalidArgument(format!("identity moves point {p}")));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for p in 0..self.size {
                    if self.act(ab, p) != self.act(a, self.act(b, p)) {
                        return Err(Error::InvalidArgument(format!("(g h)·p != g·(h·p) for g={a}, h={b}, p={p}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, p: usize) -> usize {
        self.act[g * self.size + p] as usize
    }

    pub fn stabilizer(&self, p: usize) -> Subgroup {
        let elems = self.group.elements().filter(|&g| self.act(g, p) == p).collect();
        Subgroup::new(&self.group, elems).expect("stabilizers are subgroups")
    }

    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for g in self.group.elements() {
            let q = self.act(g, p);
            if !seen[q] {
                seen[q] = true;
                out.push(q);
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for p in 0..self.size {
            if !seen[p] {
                let o = self.orbit(p);
                o.iter().for_each(|&q| seen[q] = true);
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.size
    }

    pub fn is_free(&self) -> bool {
        (0..self.size).all(|p| self.stabilizer(p).is_trivial())
    }

    /// Image of `G` in the permutation group of the points; injective iff
    /// the action is faithful.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.size).map(|p| self.act(g, p)).collect()
    }

    pub fn is_faithful(&self) -> bool {
        let id: Vec<usize> = (0..self.size).collect();
        self.group.elements().filter(|&g| self.permutation(g) == id).count() == 1
    }

    /// An equivariant bijection `self -> other` (as `map[p]`), if one exists.
    /// Orbits are matched by conjugacy of their point stabilizers.
    pub fn isomorphism_to(&self, other: &GSet) -> Option<Vec<usize>> {
        if self.size != other.size || self.group.order() != other.group.order() {
            return None;
        }
        let g = &self.group;
        let mut map = vec![usize::MAX; self.size];
        let mut used = vec![false; other.orbits().len()];
        let other_orbits = other.orbits();
        for orbit in self.orbits() {
            let p = orbit[0];
            let sp = self.stabilizer(p);
            let mut matched = false;
            for (k, o) in other_orbits.iter().enumerate() {
                if used[k] || o.len() != orbit.len() || !are_conjugate(g, &sp, &other.stabilizer(o[0])) {
                    continue;
                }
                // a point of o with stabilizer exactly sp
                let q = *o.iter().find(|&&q| other.stabilizer(q).same_elements(&sp))?;
                for x in g.elements() {
                    map[self.act(x, p)] = other.act(x, q);
                }
                used[k] = true;
                matched = true;
                break;
            }
            if !matched {
                return None;
            }
        }
        Some(map)
    }
}

/// `G` acting on itself by left multiplication.
pub fn left_regular_gset(group: Arc<FiniteGroup>) -> GSet {
    let n = group.order();
    let act = (0..n).flat_map(|g| (0..n).map(|p| group.mul(g, p) as u32).collect::<Vec<_>>()).collect();
    GSet { group, size: n, act }
}

/// Left cosets `G/H`; point 0 is the coset `eH`, the others follow in
/// order of their smallest element.
pub fn coset_gset(group: Arc<FiniteGroup>, h: &Subgroup) -> Result<GSet> {
    let h = Subgroup::new(&group, h.elements().to_vec())?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    // eH first
    let mut order: Vec<usize> = vec![group.identity()];
    order.extend(group.elements().filter(|&g| g != group.identity()));
    for g in order {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for &x in h.elements() {
            coset_of[group.mul(g, x)] = id;
        }
    }
    let size = reps.len();
    let mut act = Vec::with_capacity(n * size);
    for g in 0..n {
        for &r in &reps {
            act.push(coset_of[group.mul(g, r)] as u32);
        }
    }
    Ok(GSet { group, size, act })
}
