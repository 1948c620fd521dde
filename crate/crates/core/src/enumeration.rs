//! Exhaustive search over 4-bit permutations with `f(0) = 0` for strong and
//! very strong S-boxes.
//!
//! The search assigns `f(1), f(2), ..., f(15)` in input order. Each new value
//! is checked against every earlier assignment: the pair contributes 2 to the
//! DDT entry `(x ^ x', f(x) ^ f(x'))`, and the branch dies as soon as an entry
//! for `u != 0` would exceed 4, or a weight-one input difference meets a
//! weight-one output difference (`Diff1 > 0`). Both conditions only get worse
//! as the table fills up, so no strong leaf is ever cut.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::invariance::is_strongly_anti_invariant;
use crate::spectral::{degree_spectrum, walsh_spectrum};
use crate::{Result, SBox, SboxError};

const N: usize = 16;
const MAX_DDT: u8 = 4;

/// Translation closure factor: each normalized S-box has 16 output translates.
pub const TRANSLATIONS: u64 = 16;

#[inline]
fn weight_one(x: usize) -> bool {
    x.is_power_of_two()
}

/// Outcome of trying one assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

/// A partial normalized permutation together with its running DDT.
#[derive(Clone, Debug)]
pub struct SearchNode {
    table: [u8; N],
    /// Inputs assigned so far; bit 0 is always set (`f(0) = 0`).
    assigned: u16,
    /// Outputs consumed so far.
    used: u16,
    ddt: [[u8; N]; N],
}

impl Default for SearchNode {
    fn default() -> Self {
        SearchNode::new()
    }
}

impl SearchNode {
    pub fn new() -> Self {
        let mut ddt = [[0u8; N]; N];
        ddt[0][0] = N as u8;
        SearchNode {
            table: [0; N],
            assigned: 1,
            used: 1,
            ddt,
        }
    }

    /// Replays `values` as `f(1), f(2), ...`. `Ok(None)` means some value was
    /// rejected by the pruning rules, so the sub-tree holds no strong S-box.
    pub fn from_prefix(values: &[u8]) -> Result<Option<Self>> {
        check_prefix(values)?;
        let mut node = SearchNode::new();
        for (i, &y) in values.iter().enumerate() {
            if node.partial_ddt_update(i + 1, y) == Decision::Reject {
                return Ok(None);
            }
        }
        Ok(Some(node))
    }

    /// Number of assigned inputs other than 0.
    pub fn depth(&self) -> usize {
        self.assigned.count_ones() as usize - 1
    }

    pub fn table(&self) -> &[u8; N] {
        &self.table
    }

    pub fn is_assigned(&self, x: usize) -> bool {
        self.assigned >> x & 1 == 1
    }

    pub fn ddt_entry(&self, u: usize, v: usize) -> u8 {
        self.ddt[u][v]
    }

    /// Tries `f(x) = y`. On acceptance every pair `{x, x'}` with `x'` already
    /// assigned adds 2 to its DDT entry and the assignment is recorded; on
    /// rejection the node is untouched.
    pub fn partial_ddt_update(&mut self, x: usize, y: u8) -> Decision {
        debug_assert!(!self.is_assigned(x) && self.used >> y & 1 == 0);
        if !self.admits(x, y) {
            return Decision::Reject;
        }
        self.apply(x, y);
        Decision::Accept
    }

    #[inline]
    fn admits(&self, x: usize, y: u8) -> bool {
        let mut rest = self.assigned;
        while rest != 0 {
            let xp = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let u = x ^ xp;
            let v = usize::from(y ^ self.table[xp]);
            if self.ddt[u][v] + 2 > MAX_DDT || (weight_one(u) && weight_one(v)) {
                return false;
            }
        }
        true
    }

    #[inline]
    fn apply(&mut self, x: usize, y: u8) {
        let mut rest = self.assigned;
        while rest != 0 {
            let xp = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.ddt[x ^ xp][usize::from(y ^ self.table[xp])] += 2;
        }
        self.table[x] = y;
        self.assigned |= 1 << x;
        self.used |= 1 << y;
    }

    /// Reverts the assignment of `x`.
    pub fn undo(&mut self, x: usize) {
        debug_assert!(x != 0 && self.is_assigned(x));
        let y = self.table[x];
        self.assigned &= !(1 << x);
        self.used &= !(1 << y);
        let mut rest = self.assigned;
        while rest != 0 {
            let xp = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.ddt[x ^ xp][usize::from(y ^ self.table[xp])] -= 2;
        }
        self.table[x] = 0;
    }

    /// Recomputes the running DDT from the assigned pairs and compares.
    pub fn is_consistent(&self) -> bool {
        let mut ddt = [[0u8; N]; N];
        ddt[0][0] = N as u8;
        let mut outputs = 0u16;
        for x in 0..N {
            if !self.is_assigned(x) {
                continue;
            }
            if outputs >> self.table[x] & 1 == 1 {
                return false;
            }
            outputs |= 1 << self.table[x];
            for xp in 0..x {
                if self.is_assigned(xp) {
                    ddt[x ^ xp][usize::from(self.table[x] ^ self.table[xp])] += 2;
                }
            }
        }
        outputs == self.used && ddt == self.ddt
    }
}

/// Whether the search prunes with the running DDT, or only enforces
/// injectivity and tests every complete table from scratch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pruning {
    #[default]
    Full,
    Off,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub emit_tables: bool,
    pub shards: u32,
    pub shard_id: u32,
    pub pruning: Pruning,
    /// Fixed values for `f(1), f(2), ...`; restricts the search to a sub-tree.
    pub prefix: Vec<u8>,
    /// Worker count; `None` uses every logical processor.
    pub threads: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            emit_tables: false,
            shards: 1,
            shard_id: 0,
            pruning: Pruning::Full,
            prefix: Vec::new(),
            threads: None,
        }
    }
}

impl EnumerationConfig {
    fn validate(&self) -> Result<()> {
        if self.shards == 0 || self.shard_id >= self.shards {
            return Err(SboxError::InvalidShard {
                shards: self.shards,
                shard_id: self.shard_id,
            });
        }
        check_prefix(&self.prefix)
    }

    /// Shard owning the sub-tree below `f(1) = a, f(2) = b`: `f(1) mod shards`
    /// for up to 15 shards, otherwise the pair `(f(1), f(2))` is the key.
    fn shard_of(&self, a: u8, b: u8) -> u32 {
        let key = if self.shards <= 15 {
            u32::from(a)
        } else {
            u32::from(a) * 16 + u32::from(b)
        };
        key % self.shards
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedSbox {
    pub table: Vec<u8>,
    pub very_strong: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub strong_count: u64,
    pub very_strong_count: u64,
    /// Lexicographically sorted when tables are emitted.
    pub strong_list: Option<Vec<EnumeratedSbox>>,
    pub shard_id: u32,
    pub shards: u32,
    pub nodes_visited: u64,
    pub leaves_visited: u64,
}

impl EnumerationResult {
    /// Strong S-boxes counted with all 16 output translations.
    pub fn strong_translation_closure(&self) -> u64 {
        self.strong_count * TRANSLATIONS
    }

    pub fn very_strong_translation_closure(&self) -> u64 {
        self.very_strong_count * TRANSLATIONS
    }

    /// Summary without the table list.
    pub fn summary_json(&self) -> String {
        let value = serde_json::json!({
            "strong_count": self.strong_count,
            "very_strong_count": self.very_strong_count,
            "strong_translation_closure": self.strong_translation_closure(),
            "very_strong_translation_closure": self.very_strong_translation_closure(),
            "shard_id": self.shard_id,
            "shards": self.shards,
            "nodes_visited": self.nodes_visited,
            "leaves_visited": self.leaves_visited,
        });
        serde_json::to_string(&value).expect("JSON values always serialize")
    }

    /// One S-box per line, decimal CSV.
    pub fn tables_csv(&self, very_strong_only: bool) -> String {
        let mut out = String::new();
        for entry in self.strong_list.iter().flatten() {
            if very_strong_only && !entry.very_strong {
                continue;
            }
            let line: Vec<String> = entry.table.iter().map(u8::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn merge(&mut self, other: EnumerationResult) {
        self.strong_count += other.strong_count;
        self.very_strong_count += other.very_strong_count;
        self.nodes_visited += other.nodes_visited;
        self.leaves_visited += other.leaves_visited;
        if let (Some(list), Some(more)) = (self.strong_list.as_mut(), other.strong_list) {
            list.extend(more);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Leaf {
    Rejected,
    Strong,
    VeryStrong,
}

/// Leaf test given a complete DDT. Cheapest checks first.
fn classify_with_ddt(table: &[u8; N], ddt: &[[u8; N]; N]) -> Leaf {
    // weakly APN: more than 4 distinct derivative values for every u
    for row in &ddt[1..] {
        if row.iter().filter(|&&c| c > 0).count() <= 4 {
            return Leaf::Rejected;
        }
    }
    let f = SBox::new(4, table.to_vec()).expect("search tables are 4-bit");
    let walsh = walsh_spectrum(&f);
    if walsh.lin() != 8 || walsh.lin1() != 4 {
        return Leaf::Rejected;
    }
    if degree_spectrum(&f).get(3) < 14 {
        return Leaf::Rejected;
    }
    match is_strongly_anti_invariant(&f, 2) {
        Ok(true) => Leaf::VeryStrong,
        _ => Leaf::Strong,
    }
}

/// Leaf test from the bare table, used when pruning is off.
fn classify_from_scratch(table: &[u8; N]) -> Leaf {
    for a in [1usize, 2, 4, 8] {
        for x in 0..N {
            if weight_one(usize::from(table[x] ^ table[x ^ a])) {
                return Leaf::Rejected;
            }
        }
    }
    let mut ddt = [[0u8; N]; N];
    for u in 1..N {
        for x in 0..N {
            let v = usize::from(table[x] ^ table[x ^ u]);
            ddt[u][v] += 1;
            if ddt[u][v] > MAX_DDT {
                return Leaf::Rejected;
            }
        }
    }
    classify_with_ddt(table, &ddt)
}

struct Walker<'a> {
    config: &'a EnumerationConfig,
    node: SearchNode,
    result: EnumerationResult,
}

impl Walker<'_> {
    fn descend(&mut self, x: usize) {
        self.result.nodes_visited += 1;
        if x == N {
            self.leaf();
            return;
        }
        let prune = self.config.pruning == Pruning::Full;
        for y in 1..N as u8 {
            if self.node.used >> y & 1 == 1 {
                continue;
            }
            if prune {
                if !self.node.admits(x, y) {
                    continue;
                }
                self.node.apply(x, y);
            } else {
                self.node.table[x] = y;
                self.node.assigned |= 1 << x;
                self.node.used |= 1 << y;
            }
            self.descend(x + 1);
            if prune {
                self.node.undo(x);
            } else {
                self.node.assigned &= !(1 << x);
                self.node.used &= !(1 << y);
            }
        }
    }

    fn leaf(&mut self) {
        self.result.leaves_visited += 1;
        let verdict = match self.config.pruning {
            Pruning::Full => classify_with_ddt(&self.node.table, &self.node.ddt),
            Pruning::Off => classify_from_scratch(&self.node.table),
        };
        if verdict == Leaf::Rejected {
            return;
        }
        let very_strong = verdict == Leaf::VeryStrong;
        self.result.strong_count += 1;
        self.result.very_strong_count += u64::from(very_strong);
        if let Some(list) = self.result.strong_list.as_mut() {
            list.push(EnumeratedSbox {
                table: self.node.table.to_vec(),
                very_strong,
            });
        }
    }
}

/// Starting nodes owned by this shard, in lexicographic order.
fn work_units(config: &EnumerationConfig) -> Result<Vec<SearchNode>> {
    let prune = config.pruning == Pruning::Full;
    let base = if prune {
        match SearchNode::from_prefix(&config.prefix)? {
            Some(node) => node,
            None => return Ok(Vec::new()),
        }
    } else {
        unpruned_prefix(&config.prefix)?
    };
    let depth = config.prefix.len();
    let mut units = Vec::new();
    if depth >= 2 {
        if config.shard_of(config.prefix[0], config.prefix[1]) == config.shard_id {
            units.push(base);
        }
        return Ok(units);
    }
    // expand to depth 2 so every unit has a well-defined shard key
    let mut expand = vec![base];
    for x in depth + 1..=2 {
        let mut next = Vec::new();
        for node in expand {
            for y in 1..N as u8 {
                if node.used >> y & 1 == 1 {
                    continue;
                }
                let mut child = node.clone();
                if prune {
                    if child.partial_ddt_update(x, y) == Decision::Reject {
                        continue;
                    }
                } else {
                    child.table[x] = y;
                    child.assigned |= 1 << x;
                    child.used |= 1 << y;
                }
                next.push(child);
            }
        }
        expand = next;
    }
    units.extend(
        expand
            .into_iter()
            .filter(|n| config.shard_of(n.table[1], n.table[2]) == config.shard_id),
    );
    Ok(units)
}

fn check_prefix(values: &[u8]) -> Result<()> {
    if values.len() > N - 1 {
        return Err(SboxError::InvalidPrefix("more than 15 values".into()));
    }
    let mut seen = 1u16;
    for (i, &y) in values.iter().enumerate() {
        if y == 0 || usize::from(y) >= N || seen >> y & 1 == 1 {
            return Err(SboxError::InvalidPrefix(format!(
                "f({}) = {y} is not a fresh nonzero 4-bit value",
                i + 1
            )));
        }
        seen |= 1 << y;
    }
    Ok(())
}

fn unpruned_prefix(values: &[u8]) -> Result<SearchNode> {
    check_prefix(values)?;
    let mut node = SearchNode::new();
    for (i, &y) in values.iter().enumerate() {
        node.table[i + 1] = y;
        node.assigned |= 1 << (i + 1);
        node.used |= 1 << y;
    }
    Ok(node)
}

/// Counts (and optionally lists) the strong and very strong normalized 4-bit
/// S-boxes in one shard of the search tree.
pub fn enumerate_strong(config: &EnumerationConfig) -> Result<EnumerationResult> {
    config.validate()?;
    let units = work_units(config)?;
    let run_unit = |node: SearchNode| {
        let start = node.depth() + 1;
        let mut walker = Walker {
            config,
            node,
            result: EnumerationResult {
                strong_list: config.emit_tables.then(Vec::new),
                ..Default::default()
            },
        };
        walker.descend(start);
        walker.result
    };

    let partials: Vec<EnumerationResult> = match config.threads {
        Some(1) => units.into_iter().map(run_unit).collect(),
        threads => {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(t) = threads {
                builder = builder.num_threads(t);
            }
            let pool = builder
                .build()
                .expect("worker pool construction does not fail for a positive size");
            pool.install(|| units.into_par_iter().map(run_unit).collect())
        }
    };

    let mut total = EnumerationResult {
        strong_list: config.emit_tables.then(Vec::new),
        shard_id: config.shard_id,
        shards: config.shards,
        ..Default::default()
    };
    for partial in partials {
        total.merge(partial);
    }
    if let Some(list) = total.strong_list.as_mut() {
        list.sort_by(|a, b| a.table.cmp(&b.table));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_node_accepts_anything_fresh() {
        for x in 1..N {
            for y in 1..N as u8 {
                let mut node = SearchNode::new();
                // only the pair {0, x} exists; it is rejected only by the Diff1 rule
                let expected = if weight_one(x) && weight_one(y.into()) {
                    Decision::Reject
                } else {
                    Decision::Accept
                };
                assert_eq!(node.partial_ddt_update(x, y), expected, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn diff1_rule_rejects() {
        // f(1) = 1 is itself a weight-one pair with 0; build the node by hand
        let mut node = SearchNode::new();
        node.apply(1, 1);
        assert_eq!(node.partial_ddt_update(3, 3), Decision::Reject);
        assert!(node.is_consistent());
        assert!(!node.is_assigned(3));
    }

    #[test]
    fn ddt_rule_rejects_fifth_solution() {
        // x -> x on {0, 3, 12, 15} fills entry (3, 3) to 4; {5, 6} would be a third pair
        let mut node = SearchNode::new();
        node.apply(3, 3);
        assert_eq!(node.ddt_entry(3, 3), 2);
        node.apply(12, 12);
        node.apply(15, 15);
        node.apply(6, 6);
        assert_eq!(node.ddt_entry(3, 3), 4);
        assert_eq!(node.partial_ddt_update(5, 5), Decision::Reject);
        assert_eq!(node.ddt_entry(3, 3), 4);
        assert!(node.is_consistent());
    }

    #[test]
    fn replays_f4() {
        let f4 = [0u8, 1, 2, 12, 4, 6, 14, 5, 8, 3, 13, 10, 9, 7, 15, 11];
        let mut node = SearchNode::new();
        node.apply(1, f4[1]);
        for (x, &y) in f4.iter().enumerate().skip(2) {
            // f4 has Diff1 > 0, so only the DDT part may be checked here
            let ok =
                (0..x).all(|xp| node.ddt[x ^ xp][usize::from(y ^ node.table[xp])] + 2 <= MAX_DDT);
            assert!(ok, "x={x}");
            node.apply(x, y);
        }
        assert!(node.is_consistent());
        let max = (1..N).flat_map(|u| node.ddt[u]).max().unwrap();
        assert_eq!(max, 4);
    }

    #[test]
    fn undo_restores_state() {
        let mut node = SearchNode::new();
        assert_eq!(node.partial_ddt_update(1, 3), Decision::Accept);
        let before = node.clone();
        assert_eq!(node.partial_ddt_update(2, 5), Decision::Accept);
        node.undo(2);
        assert_eq!(node.ddt, before.ddt);
        assert_eq!(node.used, before.used);
        assert!(node.is_consistent());
    }

    #[test]
    fn invalid_configs() {
        let bad = EnumerationConfig {
            shards: 3,
            shard_id: 3,
            ..Default::default()
        };
        assert!(enumerate_strong(&bad).is_err());
        let bad = EnumerationConfig {
            shards: 0,
            ..Default::default()
        };
        assert!(enumerate_strong(&bad).is_err());
        let bad = EnumerationConfig {
            prefix: vec![3, 3],
            ..Default::default()
        };
        assert!(matches!(
            enumerate_strong(&bad),
            Err(SboxError::InvalidPrefix(_))
        ));
        // a prefix the pruning rules reject is an empty sub-tree, not an error
        let dead = EnumerationConfig {
            prefix: vec![1],
            threads: Some(1),
            ..Default::default()
        };
        let r = enumerate_strong(&dead).unwrap();
        assert_eq!((r.strong_count, r.nodes_visited), (0, 0));
    }

    #[test]
    fn small_subtree_counts() {
        // prefix of the smallest very strong table
        let config = EnumerationConfig {
            emit_tables: true,
            prefix: vec![3, 5, 8, 6, 13, 15, 1],
            threads: Some(1),
            ..Default::default()
        };
        let r = enumerate_strong(&config).unwrap();
        assert!(r.very_strong_count >= 1);
        let list = r.strong_list.unwrap();
        assert_eq!(list.len() as u64, r.strong_count);
        assert_eq!(
            list[0].table,
            vec![0, 3, 5, 8, 6, 13, 15, 1, 12, 9, 10, 7, 11, 14, 4, 2]
        );
        assert!(list[0].very_strong);
    }
}
