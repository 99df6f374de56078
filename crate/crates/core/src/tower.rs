//! Split Whitney towers: raw descriptions, the model of unpaired
//! intersection points as signed punctured trees, and the moves on it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::RelatorLattice;
use crate::sum::{SumContext, TreeSum};
use crate::tree::{
    canonical_form, canonicalize, ihx_triple, EdgeId, EdgePath, Label, PuncturedTree, RootedTree, Sign,
    SignedTree,
};
use crate::word::GroupWord;
use crate::Bounds;

/// A non-associative bracketing of labels; the shape of a surface `W_I`.
pub type Bracket = RootedTree;

/// The rooted tree `t(I)` of a bracket, with the orientation `(I1, I2,
/// root)` at every vertex and trivial decorations.
pub fn tree_of_bracket(b: &Bracket) -> RootedTree {
    match b {
        RootedTree::Leaf { label, .. } => RootedTree::Leaf { label: *label, word: GroupWord::identity() },
        RootedTree::Node { left, right, .. } => RootedTree::node(tree_of_bracket(left), tree_of_bracket(right)),
    }
}

/// A Whitney disk `W_I` with its whisker and orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDisk {
    pub bracket: Bracket,
    pub whisker: GroupWord,
    pub orientation: Sign,
}

/// An intersection point `W_left ∩ W_right`, with its sign, its group
/// element (sheet change from `left` to `right`) and the disk pairing it,
/// if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoint {
    pub left: Bracket,
    pub right: Bracket,
    pub sign: Sign,
    pub word: GroupWord,
    pub paired_by: Option<Bracket>,
}

impl RawPoint {
    pub fn order(&self) -> usize {
        self.left.order() + self.right.order()
    }
}

/// A Whitney tower as ingested: order-zero surfaces `A_1..A_m`, Whitney
/// disks and intersection points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTower {
    pub m: u32,
    pub order: usize,
    pub alphabet: u8,
    /// Orientations of `A_1..A_m`; empty means all positive.
    pub surface_orientations: Vec<Sign>,
    pub disks: Vec<RawDisk>,
    pub points: Vec<RawPoint>,
}

impl RawTower {
    fn surface_orientation(&self, label: Label) -> Sign {
        self.surface_orientations.get(label.index() as usize - 1).copied().unwrap_or(Sign::Plus)
    }

    fn disk(&self, b: &Bracket) -> Option<&RawDisk> {
        self.disks.iter().find(|d| &d.bracket == b)
    }

    fn orientation(&self, b: &Bracket) -> Sign {
        match b {
            RootedTree::Leaf { label, .. } => self.surface_orientation(*label),
            RootedTree::Node { .. } => self.disk(b).map_or(Sign::Plus, |d| d.orientation),
        }
    }

    fn whisker(&self, b: &Bracket) -> GroupWord {
        match b {
            RootedTree::Leaf { .. } => GroupWord::identity(),
            RootedTree::Node { .. } => self.disk(b).map_or_else(GroupWord::identity, |d| d.whisker.clone()),
        }
    }

    /// `t(W_K)` with vertex orientations and edge decorations induced by
    /// the disks: the vertex of `K = (K1, K2)` is oriented by
    /// `o(K) o(K1) o(K2)`, and the edge to `Ki` carries `w(K) w(Ki)^-1`.
    fn oriented_tree(&self, k: &Bracket) -> RootedTree {
        match k {
            RootedTree::Leaf { label, .. } => RootedTree::Leaf { label: *label, word: GroupWord::identity() },
            RootedTree::Node { left, right, .. } => {
                let w = self.whisker(k);
                let child = |c: &Bracket| self.oriented_tree(c).with_top_word(w.mul(&self.whisker(c).inverse()));
                let (mut l, mut r) = (child(left), child(right));
                if self.orientation(k) * self.orientation(left) * self.orientation(right) == Sign::Minus {
                    core::mem::swap(&mut l, &mut r);
                }
                RootedTree::Node { left: l.into(), right: r.into(), word: GroupWord::identity() }
            }
        }
    }

    fn check_bracket(&self, b: &Bracket, what: &str) -> Result<()> {
        if !b.is_trivially_decorated() {
            return Err(Error::InvalidTower(format!("{what}: bracket {b} carries decorations")));
        }
        if let Some(l) = b.labels().into_iter().find(|l| l.index() > self.m) {
            return Err(Error::InvalidTower(format!("{what}: label {l} exceeds {}", self.m)));
        }
        Ok(())
    }

    fn check_surface(&self, b: &Bracket, what: &str) -> Result<()> {
        self.check_bracket(b, what)?;
        if !b.is_leaf() && self.disk(b).is_none() {
            return Err(Error::InvalidTower(format!("{what}: surface W_{b} is missing")));
        }
        Ok(())
    }

    fn check_word(&self, w: &GroupWord, what: &str) -> Result<()> {
        if w.max_generator() > self.alphabet {
            return Err(Error::InvalidTower(format!("{what}: decoration {w} outside alphabet")));
        }
        Ok(())
    }

    /// Checks the well-formedness conditions of a Whitney tower.
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidTower("no order-zero surfaces".into()));
        }
        if !self.surface_orientations.is_empty() && self.surface_orientations.len() != self.m as usize {
            return Err(Error::InvalidTower("surface orientation count differs from m".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, d) in self.disks.iter().enumerate() {
            let what = format!("disk {i} W_{}", d.bracket);
            self.check_bracket(&d.bracket, &what)?;
            self.check_word(&d.whisker, &what)?;
            let RootedTree::Node { left, right, .. } = &d.bracket else {
                return Err(Error::InvalidTower(format!("{what}: a Whitney disk needs a bracket of order at least 1")));
            };
            if !seen.insert(&d.bracket) {
                return Err(Error::InvalidTower(format!("{what}: duplicate disk")));
            }
            self.check_surface(left, &what)?;
            self.check_surface(right, &what)?;
            let paired: Vec<&RawPoint> =
                self.points.iter().filter(|p| p.paired_by.as_ref() == Some(&d.bracket)).collect();
            if paired.len() != 2 {
                return Err(Error::InvalidTower(format!("{what}: pairs {} points, expected 2", paired.len())));
            }
            if paired[0].order() != paired[1].order() {
                return Err(Error::InvalidTower(format!("{what}: pairs points of different order")));
            }
            if paired[0].sign == paired[1].sign {
                return Err(Error::InvalidTower(format!("{what}: pairs points of equal sign")));
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            let what = format!("point {i} W_{} ∩ W_{}", p.left, p.right);
            self.check_surface(&p.left, &what)?;
            self.check_surface(&p.right, &what)?;
            self.check_word(&p.word, &what)?;
            match &p.paired_by {
                Some(k) => {
                    let RootedTree::Node { left, right, .. } = k else {
                        return Err(Error::InvalidTower(format!("{what}: paired by a non-disk {k}")));
                    };
                    if self.disk(k).is_none() {
                        return Err(Error::InvalidTower(format!("{what}: pairing disk W_{k} is missing")));
                    }
                    let direct = (&p.left, &p.right) == (&**left, &**right);
                    let swapped = (&p.left, &p.right) == (&**right, &**left);
                    if !direct && !swapped {
                        return Err(Error::InvalidTower(format!("{what}: not an intersection of W_{left} and W_{right}")));
                    }
                }
                None => {
                    if p.order() < self.order {
                        return Err(Error::InvalidTower(format!(
                            "{what}: unpaired point of order {} in an order-{} tower",
                            p.order(),
                            self.order
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reverses the orientation of a Whitney disk; the sign of every
    /// point on it changes.
    pub fn flip_disk(&self, disk: usize) -> Result<RawTower> {
        let mut r = self.clone();
        let d = r.disks.get_mut(disk).ok_or_else(|| Error::InvalidTower(format!("no disk {disk}")))?;
        d.orientation = -d.orientation;
        let k = d.bracket.clone();
        for p in &mut r.points {
            for side in [&p.left, &p.right] {
                if side == &k {
                    p.sign = -p.sign;
                }
            }
        }
        Ok(r)
    }

    /// Reverses the orientation of `A_i`; the sign of every point on it
    /// changes.
    pub fn flip_surface(&self, i: u32) -> Result<RawTower> {
        let l = Label::checked(i, self.m)?;
        let mut r = self.clone();
        if r.surface_orientations.is_empty() {
            r.surface_orientations = alloc::vec![Sign::Plus; self.m as usize];
        }
        let o = &mut r.surface_orientations[i as usize - 1];
        *o = -*o;
        let leaf = RootedTree::Leaf { label: l, word: GroupWord::identity() };
        for p in &mut r.points {
            for side in [&p.left, &p.right] {
                if side == &leaf {
                    p.sign = -p.sign;
                }
            }
        }
        Ok(r)
    }

    /// Changes the whisker of a disk by `h`; group elements of points on
    /// that disk change accordingly.
    pub fn change_whisker(&self, disk: usize, h: &GroupWord) -> Result<RawTower> {
        let mut r = self.clone();
        let d = r.disks.get_mut(disk).ok_or_else(|| Error::InvalidTower(format!("no disk {disk}")))?;
        d.whisker = h.mul(&d.whisker);
        let k = d.bracket.clone();
        for p in &mut r.points {
            if p.left == k {
                p.word = h.mul(&p.word);
            }
            if p.right == k {
                p.word = p.word.mul(&h.inverse());
            }
        }
        Ok(r)
    }

    /// Reads a point with its sheets exchanged.
    pub fn reverse_point(&self, point: usize) -> Result<RawTower> {
        let mut r = self.clone();
        let p = r.points.get_mut(point).ok_or_else(|| Error::InvalidTower(format!("no point {point}")))?;
        core::mem::swap(&mut p.left, &mut p.right);
        p.word = p.word.inverse();
        Ok(r)
    }
}

/// The model of a split tower: one signed punctured tree per unpaired
/// intersection point, of order the least order of an unpaired point.
pub fn extract_model(raw: &RawTower) -> Result<TowerModel> {
    raw.validate()?;
    let unpaired: Vec<&RawPoint> = raw.points.iter().filter(|p| p.paired_by.is_none()).collect();
    let order = unpaired.iter().map(|p| p.order()).min().unwrap_or(raw.order);
    let mut model = TowerModel::new(raw.m, raw.alphabet, order);
    for p in unpaired {
        let a = raw.oriented_tree(&p.left);
        let b = raw.oriented_tree(&p.right);
        model = model.add_point(PuncturedTree::from_split(p.sign, &a, &b, &p.word))?;
    }
    Ok(model)
}

/// An unpaired intersection point with its identifier and normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelPoint {
    id: u64,
    tree: PuncturedTree,
    canon: crate::tree::CanonicalTree,
    /// `tree = canon_sign * canon` as signed trees.
    canon_sign: Sign,
}

impl ModelPoint {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn tree(&self) -> &PuncturedTree {
        &self.tree
    }

    pub fn canonical(&self) -> &crate::tree::CanonicalTree {
        &self.canon
    }

    /// Coefficient sign of the point's term in the intersection invariant.
    pub fn term_sign(&self) -> Sign {
        self.canon_sign
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn is_simple(&self) -> bool {
        self.tree.tree().is_simple()
    }
}

/// A split Whitney tower of order `declared_order` on `m` order-zero
/// surfaces, as a multiset of signed punctured trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerModel {
    m: u32,
    alphabet: u8,
    declared_order: usize,
    points: Vec<ModelPoint>,
    next_id: u64,
}

/// A place to insert an IHX relator: a tree and an interior edge of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IhxSite {
    pub tree: PuncturedTree,
    pub edge: EdgePath,
}

impl IhxSite {
    pub fn triple(&self) -> Result<crate::tree::IhxTriple> {
        ihx_triple(self.tree.tree(), self.tree.resolve(&self.edge)?)
    }
}

impl TowerModel {
    pub fn new(m: u32, alphabet: u8, declared_order: usize) -> TowerModel {
        TowerModel { m, alphabet, declared_order, points: Vec::new(), next_id: 0 }
    }

    pub fn from_points(
        m: u32,
        alphabet: u8,
        declared_order: usize,
        points: impl IntoIterator<Item = PuncturedTree>,
    ) -> Result<TowerModel> {
        let mut model = TowerModel::new(m, alphabet, declared_order);
        for p in points {
            model = model.add_point(p)?;
        }
        Ok(model)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn declared_order(&self) -> usize {
        self.declared_order
    }

    pub fn points(&self) -> &[ModelPoint] {
        &self.points
    }

    pub fn point(&self, id: u64) -> Result<&ModelPoint> {
        self.points.iter().find(|p| p.id == id).ok_or(Error::UnknownPoint(id))
    }

    pub fn context(&self) -> SumContext {
        SumContext::new(self.declared_order, self.m, self.alphabet)
    }

    /// Adds a point with the next identifier.
    pub fn add_point(&self, tree: PuncturedTree) -> Result<TowerModel> {
        let t = tree.tree();
        if t.order() < self.declared_order {
            return Err(Error::InvalidTower(format!(
                "point {tree} of order {} below the tower order {}",
                t.order(),
                self.declared_order
            )));
        }
        if let Some(l) = t.labels().into_iter().find(|l| l.index() > self.m) {
            return Err(Error::LabelOutOfRange { label: l.index(), max: self.m });
        }
        if t.max_generator() > self.alphabet {
            return Err(Error::InvalidTower(format!("point {tree} uses letters outside the alphabet")));
        }
        let (canon, canon_sign) = canonicalize(&tree.signed());
        let mut out = self.clone();
        out.points.push(ModelPoint { id: out.next_id, tree, canon, canon_sign });
        out.next_id += 1;
        Ok(out)
    }

    fn remove(&self, id: u64) -> Result<(TowerModel, ModelPoint)> {
        let idx = self.points.iter().position(|p| p.id == id).ok_or(Error::UnknownPoint(id))?;
        let mut out = self.clone();
        let p = out.points.remove(idx);
        Ok((out, p))
    }

    fn replace(&self, id: u64, tree: PuncturedTree) -> Result<TowerModel> {
        let mut out = self.clone();
        let p = out.points.iter_mut().find(|p| p.id == id).ok_or(Error::UnknownPoint(id))?;
        let (canon, canon_sign) = canonicalize(&tree.signed());
        *p = ModelPoint { id, tree, canon, canon_sign };
        Ok(out)
    }

    /// Points of order exactly the declared order.
    pub fn top_points(&self) -> impl Iterator<Item = &ModelPoint> {
        self.points.iter().filter(move |p| p.order() == self.declared_order)
    }

    /// `sum eps_p t_p` over points of the declared order. As a [`TreeSum`]
    /// it is the invariant without IHX; [`TowerModel::tau_is_zero`] decides
    /// vanishing with IHX.
    pub fn tau(&self) -> TreeSum {
        let mut s = TreeSum::zero(self.context());
        for p in self.top_points() {
            s.add_term(p.canon.clone(), p.canon_sign.value()).expect("points lie in the model context");
        }
        s
    }

    /// The same sum, compared without the IHX relation.
    pub fn hat_tau(&self) -> TreeSum {
        self.tau()
    }

    /// Normal form of `tau` modulo all relators. Trivial decorations only.
    pub fn tau_normal_form(&self, lattice: &mut RelatorLattice) -> Result<TreeSum> {
        let t = self.tau();
        lattice.cover(&t)?;
        lattice.normal_form(&t)
    }

    pub fn tau_is_zero(&self, bounds: &Bounds) -> Result<bool> {
        let t = self.tau();
        RelatorLattice::for_sum(&t, bounds)?.is_zero(&t)
    }

    /// Moves the puncture of a point to another edge of its tree. The
    /// signed tree is unchanged.
    pub fn move_puncture(&self, id: u64, edge: EdgeId) -> Result<TowerModel> {
        let p = self.point(id)?;
        let moved = p.tree.with_marked(edge)?;
        self.replace(id, moved)
    }

    pub fn move_puncture_to(&self, id: u64, path: &EdgePath) -> Result<TowerModel> {
        let e = self.point(id)?.tree.resolve(path)?;
        self.move_puncture(id, e)
    }

    /// Adds the three points `sign * (I - H + X)` of an IHX triple.
    pub fn ihx_insert(&self, site: &IhxSite, sign: Sign) -> Result<TowerModel> {
        if site.tree.order() != self.declared_order {
            return Err(Error::Precondition(format!(
                "IHX tree of order {} in an order-{} tower",
                site.tree.order(),
                self.declared_order
            )));
        }
        let triple = site.triple()?;
        let mut out = self.clone();
        for p in triple.terms(sign) {
            out = out.add_point(p)?;
        }
        Ok(out)
    }

    /// Replaces a point `eps * I` at an interior edge of its tree by the two
    /// points `eps * H` and `-eps * X`.
    pub fn ihx_split(&self, id: u64, path: &EdgePath) -> Result<TowerModel> {
        let p = self.point(id)?;
        let e = p.tree.resolve(path)?;
        let triple = ihx_triple(p.tree.tree(), e)?;
        let [h, x] = triple.split_terms(p.tree.sign());
        let (out, _) = self.remove(id)?;
        out.add_point(h)?.add_point(x)
    }

    /// Removes a simple algebraically cancelling pair of top-order points.
    pub fn cancel_simple_pair(&self, p: u64, q: u64) -> Result<TowerModel> {
        if p == q {
            return Err(Error::Precondition("a point cannot cancel itself".into()));
        }
        let (a, b) = (self.point(p)?, self.point(q)?);
        for x in [a, b] {
            if x.order() != self.declared_order {
                return Err(Error::Precondition(format!(
                    "point {} has order {}, not the tower order {}",
                    x.id,
                    x.order(),
                    self.declared_order
                )));
            }
        }
        if !a.is_simple() {
            return Err(Error::NotSimple(p));
        }
        if !b.is_simple() {
            return Err(Error::NotSimple(q));
        }
        if a.canon != b.canon {
            return Err(Error::Precondition(format!("points {p} and {q} carry different trees")));
        }
        if !a.canon.two_torsion() && a.canon_sign == b.canon_sign {
            return Err(Error::Precondition(format!("points {p} and {q} have equal signs")));
        }
        let (out, _) = self.remove(p)?;
        Ok(out.remove(q)?.0)
    }

    /// The tower of the next order, once no top-order points remain.
    pub fn raise_order(&self) -> Result<TowerModel> {
        if let Some(p) = self.top_points().next() {
            return Err(Error::Precondition(format!("point {} of order {} remains", p.id, self.declared_order)));
        }
        Ok(TowerModel { declared_order: self.declared_order + 1, ..self.clone() })
    }

    /// The model with every sign reversed.
    pub fn reversed(&self) -> TowerModel {
        let mut out = self.clone();
        for p in &mut out.points {
            p.tree = p.tree.negate();
            p.canon_sign = if p.canon.two_torsion() { p.canon_sign } else { -p.canon_sign };
        }
        out
    }
}

/// Union of `a` with `b` reversed, so that `tau` of the result is
/// `tau(a) - tau(b)`. Points of `b` are renumbered after those of `a`.
pub fn glue(a: &TowerModel, b: &TowerModel) -> Result<TowerModel> {
    if a.m != b.m || a.declared_order != b.declared_order {
        return Err(Error::ContextMismatch);
    }
    let mut out = TowerModel { alphabet: a.alphabet.max(b.alphabet), ..a.clone() };
    for p in &b.reversed().points {
        out = out.add_point(p.tree.clone())?;
    }
    Ok(out)
}

/// A model whose points are exactly the given signed trees, each
/// punctured at the root edge of its normal form.
pub fn bch_tower(sigma: &[SignedTree], order: usize, m: u32) -> Result<TowerModel> {
    let mut alphabet = 0;
    let mut points = Vec::new();
    for s in sigma {
        if s.tree.order() != order {
            return Err(Error::Precondition(format!("tree of order {} in an order-{order} tower", s.tree.order())));
        }
        alphabet = alphabet.max(s.tree.max_generator());
        let f = canonical_form(&s.tree);
        let (a, b, g) = f.canon.split_form();
        points.push(PuncturedTree::from_split(s.sign * f.sign, &a, &b, &g));
    }
    TowerModel::from_points(m, alphabet, order, points)
}

/// Human-readable one-line summary of a model.
pub fn describe(model: &TowerModel) -> String {
    format!("order {} tower on {} surfaces with {} points", model.declared_order, model.m, model.points.len())
}
