//! Dynamic program for Halin graphs of arbitrary degree.
//!
//! As in the cubic case the tree is rooted at a leaf and processed bottom
//! up, but an internal vertex x of high degree absorbs its children one at
//! a time, left to right in embedding order. The state after each
//! absorption is a canonical color-equality partition of the few edges that
//! stay individually relevant — the parent edge, the two cycle edges
//! bridging out of the covered leaf arc, and the edges at the two arc-end
//! leaves — together with a summary of the unbounded family of edges
//! incident to x (and of hidden edges inherited from children): per
//! partition class a flag that one hidden edge shares its color, plus
//! counters of hidden edges holding colors of their own. Hidden edges only
//! interact with the future through x (or through the fixed arc corners),
//! so each one carries an exact mask of the concrete edges it conflicts
//! with; everything else about it is interchangeable under color
//! permutation, which is what keeps the state space constant-size.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::closed_form;
use crate::conflict::edges_conflict;
use crate::dp::{canon_rgs, local_conflicts, rgs_digit, DpStats, Rooted};
use crate::error::{HalinError, Result};
use crate::graph::{EdgeColoring, HalinGraph};
use crate::solver::{Method, SeiResult};

/// Concrete edges per state never exceed this.
const MAXB: usize = 7;

const NO_LABEL: u8 = u8::MAX;
const NO_POS: u8 = u8::MAX;

// ---------------------------------------------------------------------
// Typed boundary (public view of a scope's edge roles)
// ---------------------------------------------------------------------

/// The six edge roles of a subtree scope. Sets are disjoint: when an edge
/// qualifies for several roles it is listed under the smallest type number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedBoundary {
    /// Edges of the subtree incident to x, except those claimed by types
    /// 4 or 6. Unbounded count.
    pub type1: Vec<u32>,
    /// Edge from x to its parent.
    pub type2: u32,
    /// Cycle edge from the first arc leaf to its neighbor outside.
    pub type3: u32,
    /// Subtree edges at the first arc leaf (at most two).
    pub type4: Vec<u32>,
    /// Cycle edge from the last arc leaf to its neighbor outside.
    pub type5: u32,
    /// Subtree edges at the last arc leaf not already listed.
    pub type6: Vec<u32>,
}

impl TypedBoundary {
    /// All role sets in type order, for signature computations.
    fn sets(&self) -> [Vec<u32>; 6] {
        [
            self.type1.clone(),
            vec![self.type2],
            vec![self.type3],
            self.type4.clone(),
            vec![self.type5],
            self.type6.clone(),
        ]
    }
}

/// Typed boundary of the subtree at the vertex with external id `x`, for
/// the canonical rooting (the leaf with the smallest id). The root leaf
/// itself has no scope.
pub fn typed_boundary(g: &HalinGraph, x: u32) -> Result<TypedBoundary> {
    let v = g.index_of(x)?;
    let rooted = Rooted::build(g);
    if v == rooted.root {
        return Err(HalinError::BadArgument(format!(
            "vertex {x} is the root leaf and has no scope"
        )));
    }
    Ok(typed_boundary_at(g, &rooted, v))
}

fn typed_boundary_at(g: &HalinGraph, rooted: &Rooted, v: usize) -> TypedBoundary {
    let m = rooted.rot_cycle.len();
    let (s, t) = rooted.arc[v];
    let first = rooted.rot_cycle[s];
    let last = rooted.rot_cycle[t];
    let type2 = rooted.parent_edge(g, v);
    let type3 = rooted.cycle_edge(g, s - 1);
    let type5 = rooted.cycle_edge(g, t % m);
    let mut used = vec![type2, type3, type5];
    let mut grab = |vertex: usize, used: &mut Vec<u32>| -> Vec<u32> {
        let mut out = Vec::new();
        for &(_, e) in g.incident(vertex) {
            if !used.contains(&e) {
                used.push(e);
                out.push(e);
            }
        }
        out.sort_unstable();
        out
    };
    let type4 = if rooted.children[v].is_empty() { Vec::new() } else { grab(first, &mut used) };
    let type6 = if rooted.children[v].is_empty() { Vec::new() } else { grab(last, &mut used) };
    let mut type1: Vec<u32> = rooted.children[v]
        .iter()
        .map(|&c| g.edge_between(v, c).unwrap())
        .filter(|e| !used.contains(e))
        .collect();
    type1.sort_unstable();
    TypedBoundary { type1, type2, type3, type4, type5, type6 }
}

/// Cardinality signature of a coloring of a typed boundary: for every
/// nonempty S ⊆ {1..6}, the number of colors used by edges of *every* type
/// in S. Invariant under any permutation of the colors.
pub fn signature(tb: &TypedBoundary, coloring: &EdgeColoring) -> Result<Vec<usize>> {
    let sets = tb.sets();
    let mut colors_of: [Vec<u32>; 6] = Default::default();
    for (i, set) in sets.iter().enumerate() {
        let mut cs = Vec::new();
        for &e in set {
            cs.push(coloring.get(e).ok_or(HalinError::IncompleteColoring(e))?);
        }
        cs.sort_unstable();
        cs.dedup();
        colors_of[i] = cs;
    }
    let mut out = Vec::with_capacity(63);
    for s in 1u32..64 {
        let mut acc: Option<Vec<u32>> = None;
        for i in 0..6 {
            if s & (1 << i) != 0 {
                let set = &colors_of[i];
                acc = Some(match acc {
                    None => set.clone(),
                    Some(cur) => cur.into_iter().filter(|c| set.binary_search(c).is_ok()).collect(),
                });
            }
        }
        out.push(acc.map_or(0, |v| v.len()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// DP state
// ---------------------------------------------------------------------

/// Key of a free hidden edge: bit 7 = still incident to x ("cur"), low
/// bits = exceptional conflicts with current concrete edges beyond what
/// the kind already implies.
type FreeKey = u8;

const KIND_CUR: u8 = 1 << 7;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct GPattern {
    /// Canonical partition of the concrete list, 4 bits per edge.
    rgs: u32,
    n_classes: u8,
    /// Per class: some hidden x-incident edge shares the class color.
    has_cur: u8,
    /// Per class: one or more hidden deeper edges share the class color.
    has_deep: u8,
    /// Per class: concrete positions its hiddens conflict with beyond the
    /// kind-implied ones.
    extra: [u8; MAXB],
    /// Hidden edges holding a color of their own, grouped by key.
    frees: SmallVec<[(FreeKey, u32); 4]>,
    /// Hidden-only classes (two or more unsurfaced hiddens sharing one
    /// color); they can still absorb future hiddens or concrete edges.
    deep_only: u32,
}

impl GPattern {
    fn free_total(&self) -> u32 {
        self.frees.iter().map(|&(_, c)| c).sum()
    }

    fn alive(&self) -> u32 {
        self.n_classes as u32 + self.free_total() + self.deep_only
    }
}

/// Provenance of one stored pattern, enough to replay the choice.
#[derive(Debug, Clone, Copy, Default)]
struct GProv {
    pa: u32,
    pc: u32,
    joint: u128,
    attach: u32,
}

#[derive(Debug, Default)]
struct GTable {
    /// Sorted by rgs so merges can narrow by digit prefix.
    patterns: Vec<GPattern>,
    prov: Vec<GProv>,
}

// ---------------------------------------------------------------------
// Geometry of one absorption round
// ---------------------------------------------------------------------

struct RoundGeom {
    /// Universe: child bounded list first (its canonical order), then the
    /// remaining partial concrete edges (partial order).
    v: Vec<u32>,
    conf: Vec<u32>,
    /// Per universe position, position in the partial (pa) concrete list.
    a_pos: Vec<u8>,
    /// Per universe position, position in the child (pc) bounded list.
    b_pos: Vec<u8>,
    a_len: usize,
    b_len: usize,
    a_mask: u32,
    b_mask: u32,
    m_incx: u32,
    m_incnbx: u32,
    /// Import masks for the child's hiddens: edges incident to the child,
    /// and edges incident to the child's children.
    m_incc: u32,
    m_incchc: u32,
    /// Concrete list after this round, canonical order.
    out: Vec<u32>,
    /// Per universe position: position in `out`, or NO_POS.
    v_out: Vec<u8>,
    /// Implied-conflict masks over `out` positions.
    out_incx: u8,
    out_incnbx: u8,
    /// Per universe position of a dying x-incident edge: its exceptional
    /// conflicts with `out`, beyond the cur-implied ones.
    retire_extra: Vec<u8>,
}

fn incident_mask(g: &HalinGraph, list: &[u32], vertex: usize) -> u32 {
    let mut mask = 0u32;
    for (i, &e) in list.iter().enumerate() {
        let (a, b) = g.edge_vertices(e);
        if a == vertex || b == vertex {
            mask |= 1 << i;
        }
    }
    mask
}

fn incident_mask8(g: &HalinGraph, list: &[u32], vertex: usize) -> u8 {
    incident_mask(g, list, vertex) as u8
}

/// Concrete boundary of the partial scope at `x` covering children
/// 0..=child_idx. For the last child this is the completed typed boundary.
/// Order: the edge shared with the next merge first, remainder sorted.
fn concrete_list(g: &HalinGraph, rooted: &Rooted, x: usize, child_idx: usize) -> Vec<u32> {
    let m = rooted.rot_cycle.len();
    let children = &rooted.children[x];
    let is_final = child_idx + 1 == children.len();
    let (sx, _) = rooted.arc[x];
    let t_cur = rooted.arc[children[child_idx]].1;

    let e_parent = rooted.parent_edge(g, x);
    let left_bridge = rooted.cycle_edge(g, sx - 1);
    let right_bridge = rooted.cycle_edge(g, t_cur % m);
    let first_leaf = rooted.rot_cycle[sx];
    let last_leaf = rooted.rot_cycle[t_cur];

    let mut set = vec![e_parent, left_bridge, right_bridge];
    for anchor in [first_leaf, last_leaf] {
        for &(_, e) in g.incident(anchor) {
            set.push(e);
        }
    }
    set.sort_unstable();
    set.dedup();
    let head = if is_final { left_bridge } else { right_bridge };
    let mut out = vec![head];
    out.extend(set.into_iter().filter(|&e| e != head));
    debug_assert!(out.len() <= MAXB);
    out
}

/// Bounded list of a leaf scope: outer-left cycle edge first (the edge
/// shared with the merge that absorbs this leaf), then the rest sorted.
fn leaf_concrete(g: &HalinGraph, rooted: &Rooted, leaf: usize) -> Vec<u32> {
    let m = rooted.rot_cycle.len();
    let p = rooted.arc[leaf].0;
    let type3 = rooted.cycle_edge(g, p - 1);
    let type2 = rooted.parent_edge(g, leaf);
    let type5 = rooted.cycle_edge(g, p % m);
    let mut rest = [type2, type5];
    rest.sort_unstable();
    vec![type3, rest[0], rest[1]]
}

fn build_round(
    g: &HalinGraph,
    rooted: &Rooted,
    x: usize,
    child_idx: usize,
    a_list: &[u32],
    b_list: &[u32],
) -> RoundGeom {
    let child = rooted.children[x][child_idx];
    let mut v: Vec<u32> = b_list.to_vec();
    for &e in a_list {
        if !v.contains(&e) {
            v.push(e);
        }
    }
    debug_assert!(v.len() <= 13);
    let conf = local_conflicts(g, &v);

    let pos_in = |list: &[u32]| -> Vec<u8> {
        v.iter()
            .map(|e| list.iter().position(|f| f == e).map_or(NO_POS, |p| p as u8))
            .collect()
    };
    let a_pos = pos_in(a_list);
    let b_pos = pos_in(b_list);
    let mut a_mask = 0u32;
    let mut b_mask = 0u32;
    for i in 0..v.len() {
        if a_pos[i] != NO_POS {
            a_mask |= 1 << i;
        }
        if b_pos[i] != NO_POS {
            b_mask |= 1 << i;
        }
    }

    let m_incx = incident_mask(g, &v, x);
    let mut m_incnbx = 0u32;
    if rooted.parent[x] != usize::MAX {
        m_incnbx |= incident_mask(g, &v, rooted.parent[x]);
    }
    for &c in &rooted.children[x] {
        m_incnbx |= incident_mask(g, &v, c);
    }
    let m_incc = incident_mask(g, &v, child);
    let mut m_incchc = 0u32;
    for &cc in &rooted.children[child] {
        m_incchc |= incident_mask(g, &v, cc);
    }

    let out = concrete_list(g, rooted, x, child_idx);
    let v_out: Vec<u8> = v
        .iter()
        .map(|e| out.iter().position(|f| f == e).map_or(NO_POS, |p| p as u8))
        .collect();
    debug_assert!(out.iter().all(|e| v.contains(e)), "new concrete edges come from the universe");

    let out_incx = incident_mask8(g, &out, x);
    let mut out_incnbx = 0u8;
    if rooted.parent[x] != usize::MAX {
        out_incnbx |= incident_mask8(g, &out, rooted.parent[x]);
    }
    for &c in &rooted.children[x] {
        out_incnbx |= incident_mask8(g, &out, c);
    }

    let mut retire_extra = vec![0u8; v.len()];
    for i in 0..v.len() {
        if v_out[i] == NO_POS && m_incx & (1 << i) != 0 {
            let mut mask = 0u8;
            for (j, &f) in out.iter().enumerate() {
                if edges_conflict(g, v[i], f).expect("valid edges") {
                    mask |= 1 << j;
                }
            }
            retire_extra[i] = mask & !(out_incx | out_incnbx);
        }
    }

    RoundGeom {
        v,
        conf,
        a_pos,
        b_pos,
        a_len: a_list.len(),
        b_len: b_list.len(),
        a_mask,
        b_mask,
        m_incx,
        m_incnbx,
        m_incc,
        m_incchc,
        out,
        v_out,
        out_incx,
        out_incnbx,
        retire_extra,
    }
}

// ---------------------------------------------------------------------
// One absorption: joint enumeration plus attachment handling
// ---------------------------------------------------------------------

#[derive(Clone, Copy)]
struct JointClass {
    members: u32,
    a_label: u8,
    b_label: u8,
}

/// Where the color of an input entity ends up, for witness replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColorFrom {
    OutClass(u8),
    OutFree(u8),
    OutDeepOnly(u8),
    /// Interior from here on; any color distinct from the round's live set.
    Fresh,
}

/// Correspondence tables for one assembled choice (replay only).
#[derive(Debug, Clone, Default)]
struct Trace {
    j_class: Vec<ColorFrom>,
    pa_free: Vec<ColorFrom>,
    pa_deep_only: Vec<ColorFrom>,
    pc_free: Vec<ColorFrom>,
}

struct AbsorbOut {
    table: GTable,
    joints: usize,
}

struct Absorb<'a> {
    geom: &'a RoundGeom,
    pa: &'a GTable,
    pc: &'a GTable,
    k: u32,
    retain: bool,
    // search state
    classes: Vec<JointClass>,
    a_next: u8,
    b_next: u8,
    a_range: Vec<(usize, usize)>,
    b_range: Vec<(usize, usize)>,
    labels: Vec<u8>,
    // output
    out: HashMap<GPattern, usize>,
    out_patterns: Vec<GPattern>,
    out_prov: Vec<GProv>,
    joints: usize,
}

fn narrow(table: &[GPattern], range: (usize, usize), len: usize, depth: usize, d: u8) -> (usize, usize) {
    let shift = (len - 1 - depth) * 4;
    let slice = &table[range.0..range.1];
    let lo = slice.partition_point(|p| ((p.rgs as u64 >> shift) & 0xF) < d as u64);
    let hi = slice.partition_point(|p| ((p.rgs as u64 >> shift) & 0xF) <= d as u64);
    (range.0 + lo, range.0 + hi)
}

impl Absorb<'_> {
    fn run(&mut self) {
        if !self.pa.patterns.is_empty() && !self.pc.patterns.is_empty() {
            self.search(0);
        }
    }

    fn search(&mut self, pos: usize) {
        if pos == self.geom.v.len() {
            self.complete();
            return;
        }
        let ap = self.geom.a_pos[pos];
        let bp = self.geom.b_pos[pos];
        let conflict_row = self.geom.conf[pos];
        let n_classes = self.classes.len();

        for c in 0..=n_classes {
            let fresh = c == n_classes;
            if fresh {
                if n_classes as u32 >= self.k || n_classes >= 13 {
                    break;
                }
            } else if self.classes[c].members & conflict_row != 0 {
                continue;
            }

            let (a_digit, a_new) = if ap != NO_POS {
                if fresh || self.classes[c].a_label == NO_LABEL {
                    (self.a_next, true)
                } else {
                    (self.classes[c].a_label, false)
                }
            } else {
                (NO_LABEL, false)
            };
            let (b_digit, b_new) = if bp != NO_POS {
                if fresh || self.classes[c].b_label == NO_LABEL {
                    (self.b_next, true)
                } else {
                    (self.classes[c].b_label, false)
                }
            } else {
                (NO_LABEL, false)
            };

            let mut a_range = *self.a_range.last().unwrap();
            if ap != NO_POS {
                a_range = narrow(&self.pa.patterns, a_range, self.geom.a_len, ap as usize, a_digit);
                if a_range.0 == a_range.1 {
                    continue;
                }
            }
            let mut b_range = *self.b_range.last().unwrap();
            if bp != NO_POS {
                b_range = narrow(&self.pc.patterns, b_range, self.geom.b_len, bp as usize, b_digit);
                if b_range.0 == b_range.1 {
                    continue;
                }
            }

            let saved = if fresh {
                self.classes.push(JointClass {
                    members: 1 << pos,
                    a_label: if ap != NO_POS { a_digit } else { NO_LABEL },
                    b_label: if bp != NO_POS { b_digit } else { NO_LABEL },
                });
                None
            } else {
                let s = self.classes[c];
                self.classes[c].members |= 1 << pos;
                if a_new {
                    self.classes[c].a_label = a_digit;
                }
                if b_new {
                    self.classes[c].b_label = b_digit;
                }
                Some(s)
            };
            if a_new {
                self.a_next += 1;
            }
            if b_new {
                self.b_next += 1;
            }
            self.a_range.push(a_range);
            self.b_range.push(b_range);
            self.labels[pos] = c as u8;

            self.search(pos + 1);

            self.a_range.pop();
            self.b_range.pop();
            if a_new {
                self.a_next -= 1;
            }
            if b_new {
                self.b_next -= 1;
            }
            match saved {
                None => {
                    self.classes.pop();
                }
                Some(s) => self.classes[c] = s,
            }
        }
    }

    fn complete(&mut self) {
        self.joints += 1;
        let a_range = *self.a_range.last().unwrap();
        let b_range = *self.b_range.last().unwrap();
        let classes = self.classes.clone();
        let labels = self.labels.clone();
        for pa_idx in a_range.0..a_range.1 {
            for pc_idx in b_range.0..b_range.1 {
                self.pair(pa_idx, pc_idx, &classes, &labels);
            }
        }
    }

    /// Process one (partial pattern, child pattern, joint partition) triple:
    /// check hidden-edge compatibility, then enumerate every way of binding
    /// loose hidden edges to classes and record the resulting states.
    fn pair(&mut self, pa_idx: usize, pc_idx: usize, classes: &[JointClass], labels: &[u8]) {
        let geom = self.geom;
        let pa = &self.pa.patterns[pa_idx];
        let pc = &self.pc.patterns[pc_idx];
        let n_j = classes.len();

        // Remap per-class extras into universe masks.
        let a2v: Vec<u8> = {
            let mut t = vec![NO_POS; geom.a_len];
            for (i, &p) in geom.a_pos.iter().enumerate() {
                if p != NO_POS {
                    t[p as usize] = i as u8;
                }
            }
            t
        };
        let b2v: Vec<u8> = {
            let mut t = vec![NO_POS; geom.b_len];
            for (i, &p) in geom.b_pos.iter().enumerate() {
                if p != NO_POS {
                    t[p as usize] = i as u8;
                }
            }
            t
        };
        let remap = |mask: u8, table: &[u8]| -> u32 {
            let mut out = 0u32;
            for (i, &t) in table.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    debug_assert_ne!(t, NO_POS);
                    out |= 1 << t;
                }
            }
            out
        };

        // Per joint class: hidden summary and compatibility.
        let mut cls_cur = vec![false; n_j];
        let mut cls_deep = vec![false; n_j];
        let mut cls_deep_new = vec![false; n_j];
        let mut cls_surface = vec![0u32; n_j];
        for (j, cl) in classes.iter().enumerate() {
            let mut surface = 0u32;
            if cl.a_label != NO_LABEL {
                let a = cl.a_label as usize;
                let cur = pa.has_cur & (1 << a) != 0;
                let deep = pa.has_deep & (1 << a) != 0;
                if cur || deep {
                    let extra = remap(pa.extra[a], &a2v);
                    let implied = if cur { geom.m_incx | geom.m_incnbx } else { geom.m_incx };
                    let bits = extra | implied;
                    // Members new to the partial side must avoid the hidden.
                    if cl.members & !geom.a_mask & bits != 0 {
                        return;
                    }
                    surface |= bits;
                }
                cls_cur[j] = cur;
                cls_deep[j] = deep;
            }
            if cl.b_label != NO_LABEL {
                let b = cl.b_label as usize;
                let cur_c = pc.has_cur & (1 << b) != 0;
                let deep_c = pc.has_deep & (1 << b) != 0;
                if cur_c || deep_c {
                    // A hidden edge of the child and a hidden x-incident
                    // edge always conflict (through the child's tree edge).
                    if cls_cur[j] {
                        return;
                    }
                    let mut bits = remap(pc.extra[b], &b2v) | geom.m_incx | geom.m_incc;
                    if cur_c {
                        bits |= geom.m_incchc;
                    }
                    if cl.members & !geom.b_mask & bits != 0 {
                        return;
                    }
                    surface |= bits;
                    cls_deep[j] = true;
                    cls_deep_new[j] = true;
                }
            }
            cls_surface[j] = surface;
        }

        // The retiring x-incident edges become hidden now; fold them into
        // their classes before attachments run.
        let mut cls_retire_extra = vec![0u8; n_j];
        let mut cls_retiree = vec![false; n_j];
        for i in 0..geom.v.len() {
            if geom.v_out[i] == NO_POS && geom.m_incx & (1 << i) != 0 {
                let j = labels[i] as usize;
                // Two x-incident edges always conflict, so at most one per
                // class; and it cannot share a class with other hiddens.
                if cls_cur[j] || cls_deep[j] || cls_retiree[j] {
                    return;
                }
                cls_retiree[j] = true;
                cls_retire_extra[j] = geom.retire_extra[i];
            }
        }

        // Quick palette check before attachments: joint classes plus every
        // loose hidden that exists right now.
        let base_alive = n_j as u32 + pa.free_total() + pa.deep_only + pc.free_total();
        if n_j as u32 > self.k {
            return;
        }

        self.enumerate_attachments(
            pa_idx,
            pc_idx,
            classes,
            labels,
            &cls_cur,
            &cls_deep,
            &cls_deep_new,
            &cls_surface,
            &cls_retiree,
            &cls_retire_extra,
            base_alive,
        );
    }

    /// Deterministically enumerate attachment choices: each class may gain
    /// at most one loose hidden this round, leftover child hiddens may
    /// merge into hidden-only classes, and everything else stays loose.
    #[allow(clippy::too_many_arguments)]
    fn enumerate_attachments(
        &mut self,
        pa_idx: usize,
        pc_idx: usize,
        classes: &[JointClass],
        labels: &[u8],
        cls_cur: &[bool],
        cls_deep: &[bool],
        cls_deep_new: &[bool],
        cls_surface: &[u32],
        cls_retiree: &[bool],
        cls_retire_extra: &[u8],
        base_alive: u32,
    ) {
        let geom = self.geom;
        let pa = &self.pa.patterns[pa_idx];
        let pc = &self.pc.patterns[pc_idx];
        let n_j = classes.len();

        // Eligible (class, source) moves.
        //   source 0..pa.frees.len(): an aged loose hidden of that group
        //   source pa.frees.len()..+pc.frees.len(): a child hidden group
        //   last source: absorb one hidden-only class of the partial
        let n_aged = pa.frees.len();
        let n_fresh = pc.frees.len();
        let absorb_src = n_aged + n_fresh;
        let mut moves: Vec<(u8, u8)> = Vec::new();
        for j in 0..n_j {
            // A class that just gained a retiring x-incident edge or that
            // carries a cur hidden can never take another hidden.
            if cls_retiree[j] || cls_cur[j] {
                continue;
            }
            let members = classes[j].members;
            let pure_b = classes[j].a_label == NO_LABEL;
            let pure_a = classes[j].b_label == NO_LABEL;
            for (src, &(key, _count)) in pa.frees.iter().enumerate() {
                // Aged hiddens held separate colors in the partial's own
                // history, so they may only join classes made purely of
                // child-side edges, and such a class has no inherited
                // hiddens to clash with.
                if !pure_b {
                    continue;
                }
                let cur = key & KIND_CUR != 0;
                let extra = remap_u8(key & 0x7F, &a_slot_table(geom));
                let implied = if cur { geom.m_incx | geom.m_incnbx } else { geom.m_incx };
                if members & (extra | implied) != 0 {
                    continue;
                }
                moves.push((j as u8, src as u8));
            }
            for (s, &(key, _count)) in pc.frees.iter().enumerate() {
                // Child hiddens may only join classes purely on the partial
                // side; inherited deep hiddens there are fine, new ones are
                // from the same child and conflict.
                if !pure_a || cls_deep_new[j] {
                    continue;
                }
                let cur_c = key & KIND_CUR != 0;
                let mut bits = remap_u8(key & 0x7F, &b_slot_table(geom)) | geom.m_incx | geom.m_incc;
                if cur_c {
                    bits |= geom.m_incchc;
                }
                if members & bits != 0 {
                    continue;
                }
                moves.push((j as u8, (n_aged + s) as u8));
            }
            if pa.deep_only > 0 && pure_b && !cls_deep_new[j] && members & geom.m_incx == 0 {
                moves.push((j as u8, absorb_src as u8));
            }
        }

        // Recursive choice: for each class in ascending order pick one
        // eligible move or none; then decide how many leftover child
        // hiddens merge away.
        let mut aged_left: SmallVec<[u32; 4]> = pa.frees.iter().map(|&(_, c)| c).collect();
        let mut fresh_left: SmallVec<[u32; 4]> = pc.frees.iter().map(|&(_, c)| c).collect();
        let mut chosen: Vec<(u8, u8)> = Vec::new();
        let mut attach_counter = 0u32;
        self.choose(
            pa_idx,
            pc_idx,
            classes,
            labels,
            cls_cur,
            cls_deep,
            cls_surface,
            cls_retiree,
            cls_retire_extra,
            base_alive,
            &moves,
            0,
            &mut aged_left,
            &mut fresh_left,
            pa.deep_only,
            &mut chosen,
            &mut attach_counter,
            None,
        );
    }

    /// Walk the move list; `move_idx` advances monotonically and each class
    /// takes at most one move.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        pa_idx: usize,
        pc_idx: usize,
        classes: &[JointClass],
        labels: &[u8],
        cls_cur: &[bool],
        cls_deep: &[bool],
        cls_surface: &[u32],
        cls_retiree: &[bool],
        cls_retire_extra: &[u8],
        base_alive: u32,
        moves: &[(u8, u8)],
        move_idx: usize,
        aged_left: &mut SmallVec<[u32; 4]>,
        fresh_left: &mut SmallVec<[u32; 4]>,
        deep_only_left: u32,
        chosen: &mut Vec<(u8, u8)>,
        attach_counter: &mut u32,
        replay_target: Option<u32>,
    ) -> Option<Trace> {
        if move_idx == moves.len() {
            return self.finish_merges(
                pa_idx,
                pc_idx,
                classes,
                labels,
                cls_cur,
                cls_deep,
                cls_surface,
                cls_retiree,
                cls_retire_extra,
                base_alive,
                aged_left,
                fresh_left,
                deep_only_left,
                chosen,
                attach_counter,
                replay_target,
            );
        }
        // Skip this move.
        if let Some(t) = self.choose(
            pa_idx,
            pc_idx,
            classes,
            labels,
            cls_cur,
            cls_deep,
            cls_surface,
            cls_retiree,
            cls_retire_extra,
            base_alive,
            moves,
            move_idx + 1,
            aged_left,
            fresh_left,
            deep_only_left,
            chosen,
            attach_counter,
            replay_target,
        ) {
            return Some(t);
        }
        // Take it, if its class is still unclaimed and a hidden remains.
        let (class, src) = moves[move_idx];
        if chosen.iter().any(|&(c, _)| c == class) {
            return None;
        }
        let n_aged = aged_left.len();
        let n_fresh = fresh_left.len();
        let mut deep_only_next = deep_only_left;
        if (src as usize) < n_aged {
            if aged_left[src as usize] == 0 {
                return None;
            }
            aged_left[src as usize] -= 1;
        } else if (src as usize) < n_aged + n_fresh {
            if fresh_left[src as usize - n_aged] == 0 {
                return None;
            }
            fresh_left[src as usize - n_aged] -= 1;
        } else {
            if deep_only_left == 0 {
                return None;
            }
            deep_only_next -= 1;
        }
        chosen.push((class, src));
        let result = self.choose(
            pa_idx,
            pc_idx,
            classes,
            labels,
            cls_cur,
            cls_deep,
            cls_surface,
            cls_retiree,
            cls_retire_extra,
            base_alive,
            moves,
            move_idx + 1,
            aged_left,
            fresh_left,
            deep_only_next,
            chosen,
            attach_counter,
            replay_target,
        );
        chosen.pop();
        if (src as usize) < n_aged {
            aged_left[src as usize] += 1;
        } else if (src as usize) < n_aged + n_fresh {
            fresh_left[src as usize - n_aged] += 1;
        }
        result
    }

    /// After per-class attach choices: decide merges of leftover unsurfaced
    /// child hiddens into existing hidden-only classes or with leftover
    /// unsurfaced aged hiddens, then assemble the output state.
    #[allow(clippy::too_many_arguments)]
    fn finish_merges(
        &mut self,
        pa_idx: usize,
        pc_idx: usize,
        classes: &[JointClass],
        labels: &[u8],
        cls_cur: &[bool],
        cls_deep: &[bool],
        cls_surface: &[u32],
        cls_retiree: &[bool],
        cls_retire_extra: &[u8],
        base_alive: u32,
        aged_left: &SmallVec<[u32; 4]>,
        fresh_left: &SmallVec<[u32; 4]>,
        deep_only_left: u32,
        chosen: &[(u8, u8)],
        attach_counter: &mut u32,
        replay_target: Option<u32>,
    ) -> Option<Trace> {
        let pa = &self.pa.patterns[pa_idx];
        let pc = &self.pc.patterns[pc_idx];
        // Unsurfaced deep groups on each side (kind deep, no extras).
        let fresh_plain = pc
            .frees
            .iter()
            .enumerate()
            .find(|(_, &(key, _))| key == 0)
            .map(|(i, _)| i);
        let aged_plain = pa
            .frees
            .iter()
            .enumerate()
            .find(|(_, &(key, _))| key == 0)
            .map(|(i, _)| i);
        let fresh_avail = fresh_plain.map_or(0, |i| fresh_left[i]);
        let aged_avail = aged_plain.map_or(0, |i| aged_left[i]);

        let max_t1 = fresh_avail.min(deep_only_left);
        for t1 in 0..=max_t1 {
            let max_t2 = (fresh_avail - t1).min(aged_avail);
            for t2 in 0..=max_t2 {
                let idx = *attach_counter;
                *attach_counter += 1;
                match replay_target {
                    Some(target) if target != idx => continue,
                    _ => {}
                }
                let trace = self.assemble(
                    pa_idx,
                    pc_idx,
                    classes,
                    labels,
                    cls_cur,
                    cls_deep,
                    cls_surface,
                    cls_retiree,
                    cls_retire_extra,
                    base_alive,
                    aged_left,
                    fresh_left,
                    deep_only_left,
                    chosen,
                    (fresh_plain, aged_plain, t1, t2),
                    idx,
                    replay_target.is_some(),
                );
                if replay_target.is_some() {
                    return trace;
                }
            }
        }
        None
    }

    /// Build the post-round state for one fully specified choice. Returns
    /// the replay trace when asked for one.
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        &mut self,
        pa_idx: usize,
        pc_idx: usize,
        classes: &[JointClass],
        labels: &[u8],
        cls_cur: &[bool],
        cls_deep: &[bool],
        cls_surface: &[u32],
        cls_retiree: &[bool],
        cls_retire_extra: &[u8],
        base_alive: u32,
        aged_left: &SmallVec<[u32; 4]>,
        fresh_left: &SmallVec<[u32; 4]>,
        deep_only_left: u32,
        chosen: &[(u8, u8)],
        merges: (Option<usize>, Option<usize>, u32, u32),
        attach_idx: u32,
        want_trace: bool,
    ) -> Option<Trace> {
        let geom = self.geom;
        let pa = &self.pa.patterns[pa_idx];
        let pc = &self.pc.patterns[pc_idx];
        let n_j = classes.len();
        let n_aged = pa.frees.len();
        let (fresh_plain, aged_plain, t1, t2) = merges;

        // Palette usage for this round: all joint classes plus every loose
        // hidden color. Attachments and merges reduce the loose count.
        let attached = chosen.len() as u32;
        let absorbed = chosen.iter().filter(|&&(_, s)| s as usize == n_aged + pc.frees.len()).count() as u32;
        let alive = base_alive - attached + absorbed - absorbed - t1 - t2;
        // attached moves consume a loose hidden each except the absorb move,
        // which consumes a hidden-only class instead; t1 merges consume a
        // fresh hidden; t2 merges consume a fresh hidden and convert an aged
        // free into a hidden-only class (net one fewer color).
        if alive > self.k {
            return None;
        }

        // Effective per-class hidden state after attachments.
        let mut has_cur = vec![false; n_j];
        let mut has_deep = vec![false; n_j];
        let mut surface = cls_surface.to_vec();
        for j in 0..n_j {
            has_cur[j] = cls_cur[j];
            has_deep[j] = cls_deep[j];
            if cls_retiree[j] {
                has_cur[j] = true;
            }
        }
        for &(class, src) in chosen {
            let j = class as usize;
            if (src as usize) < n_aged {
                let (key, _) = pa.frees[src as usize];
                if key & KIND_CUR != 0 {
                    has_cur[j] = true;
                    surface[j] |= remap_u8(key & 0x7F, &a_slot_table(geom))
                        | geom.m_incx
                        | geom.m_incnbx;
                } else {
                    has_deep[j] = true;
                    surface[j] |= remap_u8(key & 0x7F, &a_slot_table(geom)) | geom.m_incx;
                }
            } else if (src as usize) < n_aged + pc.frees.len() {
                let (key, _) = pc.frees[src as usize - n_aged];
                has_deep[j] = true;
                let mut bits = remap_u8(key & 0x7F, &b_slot_table(geom)) | geom.m_incx | geom.m_incc;
                if key & KIND_CUR != 0 {
                    bits |= geom.m_incchc;
                }
                surface[j] |= bits;
            } else {
                has_deep[j] = true;
                surface[j] |= geom.m_incx;
            }
        }

        // Project classes onto the new concrete list.
        let out_len = geom.out.len();
        let mut out_labels = vec![NO_LABEL; out_len];
        for i in 0..geom.v.len() {
            if geom.v_out[i] != NO_POS {
                out_labels[geom.v_out[i] as usize] = labels[i];
            }
        }
        debug_assert!(out_labels.iter().all(|&l| l != NO_LABEL));
        let (rgs, n_classes) = canon_rgs(&out_labels);
        // Map joint class -> output class (or none when it dies).
        let mut j_to_out = vec![NO_LABEL; n_j];
        for (slot, &l) in out_labels.iter().enumerate() {
            let d = rgs_digit(rgs, out_len, slot);
            j_to_out[l as usize] = d;
        }

        let mut new_has_cur = 0u8;
        let mut new_has_deep = 0u8;
        let mut new_extra = [0u8; MAXB];
        let mut free_groups: Vec<(FreeKey, u32, Vec<ColorFrom>)> = Vec::new();
        let mut push_free = |key: FreeKey, src: ColorFrom, groups: &mut Vec<(FreeKey, u32, Vec<ColorFrom>)>| {
            if let Some(g) = groups.iter_mut().find(|g| g.0 == key) {
                g.1 += 1;
                g.2.push(src);
            } else {
                groups.push((key, 1, vec![src]));
            }
        };

        // Remap a universe surface mask to out positions, dropping interior
        // bits and the kind-implied ones.
        let to_out_extra = |mask: u32, cur: bool| -> u8 {
            let mut out = 0u8;
            for i in 0..geom.v.len() {
                if mask & (1 << i) != 0 && geom.v_out[i] != NO_POS {
                    out |= 1 << geom.v_out[i];
                }
            }
            let implied = if cur { geom.out_incx | geom.out_incnbx } else { geom.out_incx };
            out & !implied
        };

        let mut j_color: Vec<ColorFrom> = vec![ColorFrom::Fresh; n_j];
        let mut trace = Trace {
            j_class: Vec::new(),
            pa_free: Vec::new(),
            pa_deep_only: Vec::new(),
            pc_free: Vec::new(),
        };

        let mut deep_only_out = deep_only_left;
        for j in 0..n_j {
            let out_class = j_to_out[j];
            if out_class != NO_LABEL {
                let oc = out_class as usize;
                if has_cur[j] {
                    new_has_cur |= 1 << oc;
                }
                if has_deep[j] {
                    new_has_deep |= 1 << oc;
                }
                let retire_bits = if cls_retiree[j] { cls_retire_extra[j] } else { 0 };
                new_extra[oc] =
                    to_out_extra(surface[j], has_cur[j]) | (retire_bits & 0x7F);
                j_color[j] = ColorFrom::OutClass(out_class);
            } else if has_cur[j] || has_deep[j] {
                // The concrete members all went interior; the hidden keeps
                // the color as a loose hidden.
                let cur = has_cur[j];
                let mut extra = to_out_extra(surface[j], cur);
                if cls_retiree[j] {
                    extra |= cls_retire_extra[j];
                }
                let key = if cur { KIND_CUR | extra } else { extra };
                j_color[j] = ColorFrom::Fresh; // fixed up below
                push_free(key, ColorFrom::Fresh, &mut free_groups);
                let slot = free_groups.iter().map(|g| g.1).sum::<u32>(); // placeholder
                let _ = slot;
                // Mark: the last pushed source belongs to this class.
                let g = free_groups.iter_mut().find(|g| g.0 == key).unwrap();
                let last = g.2.len() - 1;
                g.2[last] = ColorFrom::OutClass(0); // placeholder, resolved later
                // Remember which joint class feeds this free for replay.
                g.2[last] = ColorFrom::Fresh;
                // Defer: record in a side list.
                trace.j_class.push(ColorFrom::Fresh); // placeholder to keep lengths in sync later
                trace.j_class.pop();
                // Use a sentinel pairing list instead:
                dying_hidden_classes_push(&mut self.scratch_dying, j, key);
            }
            // else: died with no hidden; color is interior.
        }

        // Resolved below via scratch_dying after group sorting.

        // Aged frees: leftovers keep their colors as loose hiddens with
        // re-stripped extras.
        let mut pa_free_src: Vec<ColorFrom> = Vec::new();
        for (gi, &(key, count)) in pa.frees.iter().enumerate() {
            let cur = key & KIND_CUR != 0;
            let v_mask = remap_u8(key & 0x7F, &a_slot_table(geom));
            let out_extra = to_out_extra(v_mask, cur);
            let new_key = if cur { KIND_CUR | out_extra } else { out_extra };
            let attached_here =
                chosen.iter().filter(|&&(_, s)| s as usize == gi).count() as u32;
            let merged_here = if Some(gi) == aged_plain { t2 } else { 0 };
            let leftover = count - attached_here - merged_here;
            // Sources, in deterministic order: attached first (class color),
            // then merged-into-new-deep-only, then leftovers.
            for &(class, s) in chosen.iter() {
                if s as usize == gi {
                    pa_free_src.push(class_color_from(j_to_out[class as usize]));
                }
            }
            for _ in 0..merged_here {
                pa_free_src.push(ColorFrom::OutDeepOnly(0)); // slot fixed below
            }
            for _ in 0..leftover {
                push_free(new_key, ColorFrom::Fresh, &mut free_groups);
                pa_free_src.push(ColorFrom::Fresh); // fixed below
                aged_leftover_push(&mut self.scratch_aged, gi, new_key);
            }
        }
        let _ = &pa_free_src;

        unreachable!("assemble is finished in the next edit");
    }
}

fn class_color_from(out_class: u8) -> ColorFrom {
    if out_class == NO_LABEL {
        ColorFrom::Fresh
    } else {
        ColorFrom::OutClass(out_class)
    }
}

fn a_slot_table(geom: &RoundGeom) -> Vec<u8> {
    let mut t = vec![NO_POS; geom.a_len];
    for (i, &p) in geom.a_pos.iter().enumerate() {
        if p != NO_POS {
            t[p as usize] = i as u8;
        }
    }
    t
}

fn b_slot_table(geom: &RoundGeom) -> Vec<u8> {
    let mut t = vec![NO_POS; geom.b_len];
    for (i, &p) in geom.b_pos.iter().enumerate() {
        if p != NO_POS {
            t[p as usize] = i as u8;
        }
    }
    t
}

fn remap_u8(mask: u8, table: &[u8]) -> u32 {
    let mut out = 0u32;
    for (i, &t) in table.iter().enumerate() {
        if mask & (1 << i) != 0 && t != NO_POS {
            out |= 1 << t;
        }
    }
    out
}

fn dying_hidden_classes_push(_v: &mut (), _j: usize, _key: u8) {}
fn aged_leftover_push(_v: &mut (), _gi: usize, _key: u8) {}

// placeholder public API so the crate keeps compiling while assemble is
// being finished

pub fn decide_general(_g: &HalinGraph, _k: u32) -> bool {
    todo!()
}

pub fn sei(g: &HalinGraph) -> SeiResult {
    sei_with(g, true)
}

pub(crate) fn sei_with(_g: &HalinGraph, _want_witness: bool) -> SeiResult {
    todo!()
}

pub fn sei_general_value(_g: &HalinGraph) -> (u32, DpStats) {
    todo!()
}
