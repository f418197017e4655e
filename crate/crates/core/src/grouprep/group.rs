//! Concrete permutation groups with enumerated elements and coset data.
//!
//! Groups are always given by permutation generators. Construction closes
//! the generators under composition, recording for every element a word in
//! the generators; module code uses these words to act by arbitrary group
//! elements. A "subgroup" is a registered embedding with a chosen
//! transversal, fixed at construction so induced-module matrices are
//! reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;

use super::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupTag {
    Symmetric(usize),
    Young(Vec<usize>),
    Product,
    Wreath(usize, usize),
    Custom,
}

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    tag: GroupTag,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `words[i]` is a generator word evaluating to `elements[i]`
    /// (left-to-right application order: `w = [a, b]` means `gens[b] * gens[a]`).
    words: Vec<Vec<usize>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.gens == other.gens
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>, tag: GroupTag) -> Result<Arc<PermGroup>, Error> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        // breadth-first closure; multiplication by generators on the left
        let mut elements = vec![Perm::identity(degree)];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            let word = words[frontier].clone();
            for (gi, g) in gens.iter().enumerate() {
                let next = g.compose(&current);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    let mut w = word.clone();
                    w.push(gi);
                    words.push(w);
                }
            }
            frontier += 1;
        }
        Ok(Arc::new(PermGroup {
            degree,
            gens,
            tag,
            elements,
            index,
            words,
        }))
    }

    /// The symmetric group `S_n` on the adjacent transpositions.
    pub fn symmetric(n: usize) -> Arc<PermGroup> {
        let gens = (0..n.saturating_sub(1))
            .map(|i| Perm::transposition(n, i, i + 1))
            .collect();
        PermGroup::new(n, gens, GroupTag::Symmetric(n)).expect("valid generators")
    }

    /// The Young subgroup `S_λ ⊆ S_n`, generated by the adjacent
    /// transpositions inside each block of the partition.
    pub fn young(lambda: &[usize]) -> Result<Arc<PermGroup>, Error> {
        check_partition(lambda)?;
        let n: usize = lambda.iter().sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for &part in lambda {
            for i in 0..part.saturating_sub(1) {
                gens.push(Perm::transposition(n, offset + i, offset + i + 1));
            }
            offset += part;
        }
        PermGroup::new(n, gens, GroupTag::Young(lambda.to_vec()))
    }

    /// Direct product `G × H` acting on `deg G + deg H` points.
    pub fn product(g: &Arc<PermGroup>, h: &Arc<PermGroup>) -> Arc<PermGroup> {
        let degree = g.degree + h.degree;
        let mut gens: Vec<Perm> = g.gens.iter().map(|p| p.extend(degree)).collect();
        gens.extend(h.gens.iter().map(|p| p.shift(g.degree, degree)));
        PermGroup::new(degree, gens, GroupTag::Product).expect("valid generators")
    }

    /// The wreath product `S_m ≀ S_n` inside `S_{mn}`, acting on `m` blocks
    /// of size `n`: the base `(S_n)^m` permutes within blocks and the top
    /// `S_m` permutes the blocks.
    pub fn wreath(m: usize, n: usize) -> Arc<PermGroup> {
        let degree = m * n;
        let mut gens = Vec::new();
        // base copies of S_n, one per block
        for block in 0..m {
            for i in 0..n.saturating_sub(1) {
                gens.push(Perm::transposition(degree, block * n + i, block * n + i + 1));
            }
        }
        // top S_m swapping adjacent blocks wholesale
        for b in 0..m.saturating_sub(1) {
            let mut images: Vec<usize> = (0..degree).collect();
            for i in 0..n {
                images[b * n + i] = (b + 1) * n + i;
                images[(b + 1) * n + i] = b * n + i;
            }
            gens.push(Perm::new(images).expect("block swap"));
        }
        PermGroup::new(degree, gens, GroupTag::Wreath(m, n)).expect("valid generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in deterministic breadth-first order; index 0 is the identity.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// A generator word for the element at `idx`, innermost generator first.
    pub fn word(&self, idx: usize) -> &[usize] {
        &self.words[idx]
    }

    /// Evaluate a product `x ↦ f(g_w)·x` over a word by folding `f` on
    /// generator indices; used by modules to act by arbitrary elements.
    pub fn fold_word<T>(&self, idx: usize, unit: T, mut step: impl FnMut(T, usize) -> T) -> T {
        let mut acc = unit;
        for &gi in &self.words[idx] {
            acc = step(acc, gi);
        }
        acc
    }
}

pub fn check_partition(lambda: &[usize]) -> Result<(), Error> {
    if lambda.is_empty()
        || lambda.iter().any(|&x| x == 0)
        || lambda.windows(2).any(|w| w[0] < w[1])
    {
        return Err(Error::NotAPartition(lambda.to_vec()));
    }
    Ok(())
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A registered subgroup embedding `H → G` with a fixed transversal.
///
/// Generator `i` of `sub` maps to `gen_images[i]` (a permutation of the
/// ambient degree). The transversal lists left-coset representatives of
/// `im(H)` in `G`, identity first, in the ambient breadth-first order.
#[derive(Debug)]
pub struct Subgroup {
    pub sub: Arc<PermGroup>,
    pub amb: Arc<PermGroup>,
    gen_images: Vec<Perm>,
    image_index: HashMap<Perm, usize>,
    transversal: Vec<Perm>,
}

impl Subgroup {
    pub fn new(
        sub: Arc<PermGroup>,
        amb: Arc<PermGroup>,
        gen_images: Vec<Perm>,
    ) -> Result<Subgroup, Error> {
        if gen_images.len() != sub.gens().len() {
            return Err(Error::BadSubgroup(
                "one image per subgroup generator required".into(),
            ));
        }
        for img in &gen_images {
            if !amb.contains(img) {
                return Err(Error::BadSubgroup(format!(
                    "generator image {:?} is not in the ambient group",
                    img.images()
                )));
            }
        }
        // image of each subgroup element through its generator word
        let mut element_images = Vec::with_capacity(sub.order());
        let mut image_index = HashMap::new();
        for idx in 0..sub.order() {
            let img = sub.fold_word(idx, Perm::identity(amb.degree()), |acc, gi| {
                gen_images[gi].compose(&acc)
            });
            element_images.push(img.clone());
            if image_index.insert(img, idx).is_some() {
                return Err(Error::BadSubgroup("embedding is not faithful".into()));
            }
        }
        // greedy transversal in breadth-first element order
        let mut transversal = Vec::new();
        let mut covered = vec![false; amb.order()];
        for g in amb.elements() {
            let gi = amb.element_index(g).expect("own element");
            if covered[gi] {
                continue;
            }
            transversal.push(g.clone());
            for h in &element_images {
                let gh = g.compose(h);
                covered[amb.element_index(&gh).expect("closed")] = true;
            }
        }
        Ok(Subgroup {
            sub,
            amb,
            gen_images,

            image_index,
            transversal,
        })
    }

    /// Identity-style embedding for a subgroup whose generators are already
    /// permutations of the ambient degree (Young subgroups, wreath products).
    pub fn inclusion(sub: Arc<PermGroup>, amb: Arc<PermGroup>) -> Result<Subgroup, Error> {
        let images = sub.gens().to_vec();
        Subgroup::new(sub, amb, images)
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Perm] {
        &self.transversal
    }

    pub fn gen_image(&self, i: usize) -> &Perm {
        &self.gen_images[i]
    }

    /// Index into `sub.elements()` of the subgroup element whose image is `p`.
    pub fn preimage_index(&self, p: &Perm) -> Option<usize> {
        self.image_index.get(p).copied()
    }

    /// Factor `g = t · h` with `t` in the transversal and `h` in the image
    /// of the subgroup; returns the transversal position and the subgroup
    /// element index.
    pub fn factor(&self, g: &Perm) -> Option<(usize, usize)> {
        for (ti, t) in self.transversal.iter().enumerate() {
            let h = t.inverse().compose(g);
            if let Some(hi) = self.preimage_index(&h) {
                return Some((ti, hi));
            }
        }
        None
    }
}

/// One orbit of a basis-point action, with Schreier data: group elements
/// carrying the representative to each member, and Schreier generators of
/// the representative's stabilizer.
pub struct OrbitData {
    pub representative: usize,
    pub members: Vec<usize>,
    /// `transversal[k]` maps the representative to `members[k]`
    pub transversal: Vec<Perm>,
    /// deduplicated Schreier generators of the stabilizer of the representative
    pub stabilizer: Vec<Perm>,
}

/// Decompose `{0..npoints}` into orbits under `gens_on_points[g][x]`,
/// where `gens_on_points[g]` is the point action of `group_gens[g]`.
pub fn orbits_with_stabilizers(
    npoints: usize,
    gens_on_points: &[Vec<usize>],
    group_gens: &[Perm],
    group_degree: usize,
) -> Vec<OrbitData> {
    debug_assert_eq!(gens_on_points.len(), group_gens.len());
    let mut seen = vec![false; npoints];
    let mut out = Vec::new();
    for start in 0..npoints {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        let mut transversal = vec![Perm::identity(group_degree)];
        let mut pos = HashMap::new();
        pos.insert(start, 0usize);
        seen[start] = true;
        let mut frontier = 0;
        let mut stabilizer: Vec<Perm> = Vec::new();
        while frontier < members.len() {
            let x = members[frontier];
            let ux = transversal[frontier].clone();
            for (gi, g) in gens_on_points.iter().enumerate() {
                let y = g[x];
                let gux = group_gens[gi].compose(&ux);
                if let Some(&k) = pos.get(&y) {
                    // Schreier generator u_y⁻¹ · g · u_x fixes the representative
                    let s = transversal[k].inverse().compose(&gux);
                    if !s.is_identity() && !stabilizer.contains(&s) {
                        stabilizer.push(s);
                    }
                } else {
                    seen[y] = true;
                    pos.insert(y, members.len());
                    members.push(y);
                    transversal.push(gux);
                }
            }
            frontier += 1;
        }
        out.push(OrbitData {
            representative: start,
            members,
            transversal,
            stabilizer,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(PermGroup::symmetric(1).order(), 1);
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::symmetric(5).order(), 120);
    }

    #[test]
    fn symmetric_generators_satisfy_braid_relations() {
        let g = PermGroup::symmetric(4);
        let gens = g.gens();
        for s in gens {
            assert!(s.compose(s).is_identity());
        }
        for i in 0..gens.len() - 1 {
            let st = gens[i].compose(&gens[i + 1]);
            assert!(st.compose(&st).compose(&st).is_identity());
        }
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i + 2 <= j {
                    let st = gens[i].compose(&gens[j]);
                    assert!(st.compose(&st).is_identity());
                }
            }
        }
    }

    #[test]
    fn young_subgroup_order() {
        // S_(2,1) inside S_3 has order 2
        let y = PermGroup::young(&[2, 1]).unwrap();
        assert_eq!(y.degree(), 3);
        assert_eq!(y.order(), 2);
    }

    #[test]
    fn young_rejects_non_partition() {
        assert!(PermGroup::young(&[1, 2]).is_err());
        assert!(PermGroup::young(&[2, 0]).is_err());
    }

    #[test]
    fn wreath_order_by_enumeration() {
        // |S_2 ≀ S_2| = |S_2|^2 · |S_2| = 8 inside S_4
        let w = PermGroup::wreath(2, 2);
        assert_eq!(w.degree(), 4);
        assert_eq!(w.order(), 8);
        let big = PermGroup::wreath(2, 3);
        assert_eq!(big.order(), 6 * 6 * 2);
    }

    #[test]
    fn transversal_of_young_in_s3() {
        let s3 = PermGroup::symmetric(3);
        let y = PermGroup::young(&[2, 1]).unwrap();
        let sub = Subgroup::inclusion(y, s3).unwrap();
        assert_eq!(sub.index(), 3);
        // every ambient element factors
        for g in sub.amb.elements() {
            assert!(sub.factor(g).is_some());
        }
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = PermGroup::symmetric(4);
        for idx in 0..g.order() {
            let rebuilt = g.fold_word(idx, Perm::identity(4), |acc, gi| {
                g.gens()[gi].compose(&acc)
            });
            assert_eq!(&rebuilt, &g.elements()[idx]);
        }
    }

    #[test]
    fn partitions_of_four() {
        let p = partitions(4);
        assert_eq!(
            p,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }
}
