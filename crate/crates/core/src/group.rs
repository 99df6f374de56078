//! The groups `T_n(m)` for trivial decorations: relators, presentations,
//! group structure, lattice membership and reduction to simple trees.
//!
//! IHX preserves the multiset of leaf labels, so the relator lattice splits
//! into blocks indexed by that multiset; all computations run blockwise.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{merge_torsion, smith_normal_form, smith_of_lattice, Lattice};
use crate::sum::{SumContext, TreeSum};
use crate::tree::{
    all_trees, block_trees, canonicalize, ihx_triple, raw_code, raw_trees, CanonicalTree, EdgeId, Label, RawTree, Sign,
    SignedTree,
};
use crate::Bounds;

/// An IHX relator with the tree and edge it was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IhxRelator {
    /// The relator's `I` tree.
    pub base: CanonicalTree,
    /// Interior edge of `base.representative()`.
    pub edge: EdgeId,
    /// `I - H + X`.
    pub sum: TreeSum,
}

fn trivial_ctx(n: usize, m: u32) -> SumContext {
    SumContext::new(n, m, 0)
}

/// The relator `I - H + X` at an interior edge of a canonical tree's
/// representative.
pub fn ihx_relator_at(base: &CanonicalTree, edge: EdgeId, ctx: SumContext) -> Result<TreeSum> {
    let triple = ihx_triple(&base.representative(), edge)?;
    let mut s = TreeSum::zero(ctx);
    for p in triple.terms(Sign::Plus) {
        s.add_signed(&p.signed())?;
    }
    Ok(s)
}

fn relators_for(trees: &[CanonicalTree], ctx: SumContext) -> Result<Vec<IhxRelator>> {
    let mut out = Vec::new();
    for t in trees {
        for edge in t.representative().interior_edges() {
            out.push(IhxRelator { base: t.clone(), edge, sum: ihx_relator_at(t, edge, ctx)? });
        }
    }
    Ok(out)
}

/// Every IHX relator of order `n` over labels `1..=m`, one per canonical
/// tree and interior edge, in enumeration order.
pub fn ihx_relators(n: usize, m: u32, bounds: &Bounds) -> Result<Vec<IhxRelator>> {
    relators_for(&all_trees(n, m, bounds)?, trivial_ctx(n, m))
}

/// The raw presentation: orientation-explicit generators, one row per AS
/// relator `t + t'` (one per tree and trivalent vertex) and one per IHX
/// relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub generators: Vec<RawTree>,
    pub rows: Vec<Vec<i64>>,
    pub as_rows: usize,
    pub ihx_rows: usize,
}

pub fn presentation(n: usize, m: u32, bounds: &Bounds) -> Result<RelationMatrix> {
    let generators = raw_trees(n, m, bounds)?;
    let index: BTreeMap<&RawTree, usize> = generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut rows = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let rep = g.representative();
        for v in 0..rep.vertices().len() {
            if rep.is_leaf(v) {
                continue;
            }
            let flipped = raw_code(&rep.flip_vertex(v)?);
            let mut row = vec![0i64; generators.len()];
            row[i] += 1;
            row[index[&flipped]] += 1;
            rows.push(row);
        }
    }
    let as_rows = rows.len();
    for t in all_trees(n, m, bounds)? {
        let rep = t.representative();
        for edge in rep.interior_edges() {
            let mut row = vec![0i64; generators.len()];
            for p in ihx_triple(&rep, edge)?.terms(Sign::Plus) {
                row[index[&raw_code(p.tree())]] += p.sign().value();
            }
            rows.push(row);
        }
    }
    let ihx_rows = rows.len() - as_rows;
    Ok(RelationMatrix { generators, rows, as_rows, ihx_rows })
}

/// Free rank and invariant factors of a finitely generated abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    /// Invariant factors `d1 | d2 | ...`, each greater than one.
    pub torsion: Vec<u64>,
}

impl AbelianGroupStructure {
    /// Cokernel of a relator matrix with `ncols` generators.
    pub fn cokernel(rows: &[Vec<i64>], ncols: usize) -> Result<AbelianGroupStructure> {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&big, ncols);
        Self::from_smith(&s.factors, ncols - s.rank)
    }

    fn from_smith(factors: &[BigInt], free_rank: usize) -> Result<AbelianGroupStructure> {
        let mut torsion = Vec::new();
        for f in factors {
            if !f.is_one() {
                torsion.push(f.to_u64().ok_or(Error::Overflow)?);
            }
        }
        Ok(AbelianGroupStructure { free_rank, torsion })
    }

    /// Direct sum.
    pub fn sum(parts: &[AbelianGroupStructure]) -> AbelianGroupStructure {
        let orders: Vec<u64> = parts.iter().flat_map(|p| p.torsion.iter().copied()).collect();
        AbelianGroupStructure { free_rank: parts.iter().map(|p| p.free_rank).sum(), torsion: merge_torsion(&orders) }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Sorted leaf labels; IHX never moves a tree between blocks.
pub type BlockKey = Vec<Label>;

/// The relator lattice of one block: canonical trees as columns, IHX
/// relators plus `2t` for every two-torsion tree as rows.
#[derive(Clone, Debug)]
struct Block {
    columns: Vec<CanonicalTree>,
    index: BTreeMap<CanonicalTree, usize>,
    relators: Vec<IhxRelator>,
    lattice: Lattice,
}

impl Block {
    fn build(columns: Vec<CanonicalTree>, ctx: SumContext) -> Result<Block> {
        let index: BTreeMap<CanonicalTree, usize> = columns.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let relators = relators_for(&columns, ctx)?;
        let mut lattice = Lattice::new(columns.len(), true);
        for r in &relators {
            lattice.insert(vector(&index, &r.sum));
        }
        for (i, t) in columns.iter().enumerate() {
            if t.two_torsion() {
                let mut v = vec![BigInt::zero(); columns.len()];
                v[i] = BigInt::from(2);
                lattice.insert(v);
            }
        }
        Ok(Block { columns, index, relators, lattice })
    }

    fn structure(&self) -> Result<AbelianGroupStructure> {
        let s = smith_of_lattice(&self.lattice);
        AbelianGroupStructure::from_smith(&s.factors, self.columns.len() - s.rank)
    }

    fn row_count(&self) -> usize {
        self.relators.len() + self.columns.iter().filter(|t| t.two_torsion()).count()
    }
}

fn vector(index: &BTreeMap<CanonicalTree, usize>, s: &TreeSum) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); index.len()];
    for (t, c) in s.terms() {
        v[index[t]] += c;
    }
    v
}

/// Which label patterns a table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelFilter {
    All,
    /// Only trees whose leaf labels are pairwise distinct.
    Nonrepeating,
}

/// The relator lattice of `T_n(m)`, split into label blocks.
#[derive(Clone, Debug)]
pub struct RelatorLattice {
    ctx: SumContext,
    blocks: BTreeMap<BlockKey, Block>,
}

/// A coefficient on an IHX relator in a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorUse {
    pub relator: IhxRelator,
    pub coefficient: i64,
}

impl RelatorLattice {
    pub fn new(n: usize, m: u32, bounds: &Bounds) -> Result<RelatorLattice> {
        Self::with_filter(n, m, LabelFilter::All, bounds)
    }

    pub fn with_filter(n: usize, m: u32, filter: LabelFilter, bounds: &Bounds) -> Result<RelatorLattice> {
        let ctx = trivial_ctx(n, m);
        let mut grouped: BTreeMap<BlockKey, Vec<CanonicalTree>> = BTreeMap::new();
        for t in all_trees(n, m, bounds)? {
            if filter == LabelFilter::Nonrepeating && !t.is_nonrepeating() {
                continue;
            }
            grouped.entry(t.labels()).or_default().push(t);
        }
        let mut blocks = BTreeMap::new();
        for (k, cols) in grouped {
            blocks.insert(k, Block::build(cols, ctx)?);
        }
        Ok(RelatorLattice { ctx, blocks })
    }

    /// Only the blocks with the given label multisets.
    pub fn for_blocks(
        n: usize,
        m: u32,
        keys: impl IntoIterator<Item = BlockKey>,
        bounds: &Bounds,
    ) -> Result<RelatorLattice> {
        bounds.check(n, m)?;
        let mut lat = RelatorLattice { ctx: trivial_ctx(n, m), blocks: BTreeMap::new() };
        lat.ensure_blocks(keys)?;
        Ok(lat)
    }

    /// Adds any missing blocks for the given label multisets.
    pub fn ensure_blocks(&mut self, keys: impl IntoIterator<Item = BlockKey>) -> Result<()> {
        let (n, m) = (self.ctx.order, self.ctx.labels);
        for k in keys {
            if k.len() != n + 2 || k.iter().any(|l| l.index() > m) {
                return Err(Error::Precondition(alloc::format!("label multiset of size {} at order {n}", k.len())));
            }
            if !self.blocks.contains_key(&k) {
                let cols = block_trees(&k);
                self.blocks.insert(k, Block::build(cols, self.ctx)?);
            }
        }
        Ok(())
    }

    /// Adds the blocks touched by `ts`.
    pub fn cover(&mut self, ts: &TreeSum) -> Result<()> {
        self.ensure_blocks(ts.terms().map(|(t, _)| t.labels()))
    }

    /// The blocks touched by `ts`.
    pub fn for_sum(ts: &TreeSum, bounds: &Bounds) -> Result<RelatorLattice> {
        let ctx = ts.context();
        Self::for_blocks(ctx.order, ctx.labels, ts.terms().map(|(t, _)| t.labels()), bounds)
    }

    pub fn context(&self) -> SumContext {
        self.ctx
    }

    pub fn generator_count(&self) -> usize {
        self.blocks.values().map(|b| b.columns.len()).sum()
    }

    pub fn relator_count(&self) -> usize {
        self.blocks.values().map(Block::row_count).sum()
    }

    pub fn structure(&self) -> Result<AbelianGroupStructure> {
        let parts: Result<Vec<_>> = self.blocks.values().map(Block::structure).collect();
        Ok(AbelianGroupStructure::sum(&parts?))
    }

    fn check(&self, ts: &TreeSum) -> Result<()> {
        if ts.context().order != self.ctx.order || ts.context().labels != self.ctx.labels {
            return Err(Error::ContextMismatch);
        }
        if !ts.is_trivially_decorated() {
            return Err(Error::Decorated);
        }
        Ok(())
    }

    fn split<'a>(&'a self, ts: &TreeSum) -> Result<BTreeMap<&'a BlockKey, Vec<BigInt>>> {
        let mut out: BTreeMap<&BlockKey, Vec<BigInt>> = BTreeMap::new();
        for (t, c) in ts.terms() {
            let key = t.labels();
            let (k, block) = self
                .blocks
                .get_key_value(&key)
                .ok_or_else(|| Error::Precondition(alloc::format!("tree {t} outside the lattice")))?;
            let v = out.entry(k).or_insert_with(|| vec![BigInt::zero(); block.columns.len()]);
            let i = *block
                .index
                .get(t)
                .ok_or_else(|| Error::Precondition(alloc::format!("tree {t} outside the lattice")))?;
            v[i] += c;
        }
        Ok(out)
    }

    /// The unique reduced representative of `ts` modulo the relators.
    pub fn normal_form(&self, ts: &TreeSum) -> Result<TreeSum> {
        self.check(ts)?;
        let mut out = TreeSum::zero(ts.context());
        for (k, v) in self.split(ts)? {
            let block = &self.blocks[k];
            let (r, _) = block.lattice.reduce(&v);
            for (i, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(block.columns[i].clone(), c.to_i64().ok_or(Error::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, ts: &TreeSum) -> Result<bool> {
        Ok(self.normal_form(ts)?.is_empty())
    }

    /// Writes `ts` as an integer combination of IHX relators plus even
    /// multiples of two-torsion trees, if it vanishes. Only the IHX part is
    /// returned.
    pub fn decompose(&self, ts: &TreeSum) -> Result<Option<Vec<RelatorUse>>> {
        self.check(ts)?;
        let mut out = Vec::new();
        for (k, v) in self.split(ts)? {
            let block = &self.blocks[k];
            let Some(w) = block.lattice.decompose(&v) else { return Ok(None) };
            for (i, c) in w {
                if i < block.relators.len() && !c.is_zero() {
                    let coefficient = c.to_i64().ok_or(Error::Overflow)?;
                    out.push(RelatorUse { relator: block.relators[i].clone(), coefficient });
                }
            }
        }
        Ok(Some(out))
    }

    pub fn relators(&self) -> impl Iterator<Item = &IhxRelator> {
        self.blocks.values().flat_map(|b| b.relators.iter())
    }
}

/// A group table row: `{order, labels, free_rank, torsion, generator_count,
/// relator_count}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub order: usize,
    pub labels: u32,
    pub structure: AbelianGroupStructure,
    pub generator_count: usize,
    pub relator_count: usize,
}

pub fn group_table(n: usize, m: u32, filter: LabelFilter, bounds: &Bounds) -> Result<GroupTable> {
    let lat = RelatorLattice::with_filter(n, m, filter, bounds)?;
    Ok(GroupTable {
        order: n,
        labels: m,
        structure: lat.structure()?,
        generator_count: lat.generator_count(),
        relator_count: lat.relator_count(),
    })
}

/// Isomorphism type of `T_n(m)` with trivial decorations.
pub fn group_structure(n: usize, m: u32, bounds: &Bounds) -> Result<AbelianGroupStructure> {
    RelatorLattice::new(n, m, bounds)?.structure()
}

/// Isomorphism type of the span of nonrepeating trees in `T_n(m)`.
pub fn nonrepeating_group_structure(n: usize, m: u32, bounds: &Bounds) -> Result<AbelianGroupStructure> {
    RelatorLattice::with_filter(n, m, LabelFilter::Nonrepeating, bounds)?.structure()
}

/// Whether `ts` vanishes in `T_n(m)`.
pub fn is_zero(ts: &TreeSum, n: usize, m: u32, bounds: &Bounds) -> Result<bool> {
    let ctx = ts.context();
    if ctx.order != n || ctx.labels != m {
        return Err(Error::ContextMismatch);
    }
    RelatorLattice::for_sum(ts, bounds)?.is_zero(ts)
}

/// A leaf-to-leaf path of greatest length, least in vertex ids among ties,
/// as its vertex sequence.
fn spine(t: &crate::tree::DecoratedTree) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for a in t.leaves() {
        let mut parent = vec![usize::MAX; t.vertices().len()];
        let mut dist = vec![usize::MAX; t.vertices().len()];
        dist[a] = 0;
        let mut queue = alloc::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &e in t.incident(v) {
                let u = t.other_end(e, v);
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        for b in t.leaves() {
            if b == a || dist[b] + 1 < best.len() {
                continue;
            }
            let mut path = vec![b];
            let mut v = b;
            while v != a {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            if path.len() > best.len() || (path.len() == best.len() && path < best) {
                best = path;
            }
        }
    }
    best
}

/// An interior edge joining the spine to a trivalent vertex off it, if any.
pub(crate) fn off_spine_edge(t: &crate::tree::DecoratedTree) -> Option<EdgeId> {
    let sp = spine(t);
    let mut on = vec![false; t.vertices().len()];
    for &v in &sp {
        on[v] = true;
    }
    for &v in &sp {
        if t.is_leaf(v) {
            continue;
        }
        for &e in t.incident(v) {
            let u = t.other_end(e, v);
            if !on[u] && !t.is_leaf(u) {
                return Some(e);
            }
        }
    }
    None
}

/// Rewrites a tree as a combination of simple trees using IHX.
///
/// Each step takes a longest leaf-to-leaf path and applies IHX at an edge
/// joining it to an off-path trivalent vertex; both new trees have that
/// vertex on a strictly longer path, so the number of off-path trivalent
/// vertices decreases.
pub fn reduce_to_simple(t: &CanonicalTree, labels: u32) -> Result<TreeSum> {
    if !t.is_trivially_decorated() {
        return Err(Error::Decorated);
    }
    let ctx = trivial_ctx(t.order(), labels);
    let mut pending = TreeSum::term(ctx, t.clone(), 1)?;
    let mut done = TreeSum::zero(ctx);
    loop {
        let next = pending.terms().next().map(|(c, k)| (c.clone(), k));
        let Some((c, k)) = next else { break };
        pending.add_term(c.clone(), -k)?;
        let rep = c.representative();
        match off_spine_edge(&rep) {
            None => done.add_term(c, k)?,
            Some(e) => {
                let triple = ihx_triple(&rep, e)?;
                let (_, si) = canonicalize(&triple.i.signed());
                for p in triple.split_terms(si) {
                    let (u, s) = canonicalize(&SignedTree::new(p.sign(), p.tree().clone()));
                    pending.add_term(u, k * s.value())?;
                }
            }
        }
    }
    Ok(done)
}
