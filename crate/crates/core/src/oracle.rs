//! Exhaustive reference miner.
//!
//! Enumerates every itemset of a small context as a bitmask, counts supports
//! straight from the object rows and derives closures, minimal generators,
//! the cover relation and both rule bases by brute force. Nothing here shares
//! code with the three-stage pipeline beyond [`Itemset`], [`Ratio`] and the
//! rule types.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::context::{MiningParams, TransactionContext};
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::ratio::Ratio;
use crate::rules::{sort_rules, GenericRule, RuleKind};

/// Item count accepted when no explicit limit is given.
pub const DEFAULT_LIMIT: usize = 20;
const HARD_LIMIT: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClass {
    pub closure: Itemset,
    pub support: u32,
    /// Minimal generators, lexicographically sorted.
    pub generators: Vec<Itemset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Ordered by support descending, then by smallest generator.
    pub classes: Vec<OracleClass>,
    /// Cover pairs `(lower, upper)` as indices into `classes`, sorted.
    pub hasse: Vec<(usize, usize)>,
    pub bg: Vec<GenericRule>,
    pub ri: Vec<GenericRule>,
}

impl OracleResult {
    pub fn closed_sets(&self) -> impl Iterator<Item = (&Itemset, u32)> {
        self.classes.iter().map(|c| (&c.closure, c.support))
    }
}

struct Masks {
    n: usize,
    rows: Vec<u32>,
}

impl Masks {
    fn new(ctx: &TransactionContext) -> Self {
        let rows = (0..ctx.num_objects())
            .map(|o| {
                ctx.row(o)
                    .expect("object in range")
                    .ones()
                    .fold(0u32, |m, i| m | (1 << i))
            })
            .collect();
        Masks {
            n: ctx.num_items(),
            rows,
        }
    }

    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn support(&self, x: u32) -> u32 {
        self.rows.iter().filter(|&&r| r & x == x).count() as u32
    }

    fn closure(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .filter(|&&r| r & x == x)
            .fold(self.full(), |acc, &r| acc & r)
    }
}

fn to_itemset(mask: u32) -> Itemset {
    Itemset::from_sorted((0..32).filter(|i| mask & (1 << i) != 0).collect())
}

fn check_size(ctx: &TransactionContext, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_LIMIT);
    if ctx.num_items() > limit {
        return Err(Error::OracleTooLarge {
            items: ctx.num_items(),
            limit,
        });
    }
    Ok(())
}

/// Mines `ctx` exhaustively. The class of the empty set is always present,
/// whatever the threshold.
pub fn oracle_mine(ctx: &TransactionContext, params: &MiningParams, limit: usize) -> Result<OracleResult> {
    check_size(ctx, limit)?;
    let m = Masks::new(ctx);
    let supp: Vec<u32> = (0..=m.full()).map(|x| m.support(x)).collect();

    // closure mask -> generator masks
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for x in 0..=m.full() {
        let s = supp[x as usize];
        if x != 0 && s < params.minsupp() {
            continue;
        }
        let minimal = (0..m.n)
            .filter(|i| x & (1 << i) != 0)
            .all(|i| supp[(x & !(1 << i)) as usize] != s);
        if minimal {
            groups.entry(m.closure(x)).or_default().push(x);
        }
    }

    let mut classes: Vec<(u32, OracleClass)> = groups
        .into_iter()
        .map(|(closure, gens)| {
            let mut generators: Vec<Itemset> = gens.into_iter().map(to_itemset).collect();
            generators.sort();
            (
                closure,
                OracleClass {
                    closure: to_itemset(closure),
                    support: supp[closure as usize],
                    generators,
                },
            )
        })
        .collect();
    classes.sort_by(|a, b| {
        b.1.support
            .cmp(&a.1.support)
            .then_with(|| a.1.generators[0].cmp(&b.1.generators[0]))
    });

    let k = classes.len();
    let below = |a: usize, b: usize| {
        let (x, y) = (classes[a].0, classes[b].0);
        x != y && x & y == x
    };
    let mut hasse = Vec::new();
    for lo in 0..k {
        for up in 0..k {
            if below(lo, up) && !(0..k).any(|mid| below(lo, mid) && below(mid, up)) {
                hasse.push((lo, up));
            }
        }
    }
    hasse.sort_unstable();

    let mut bg = Vec::new();
    for (_, c) in &classes {
        for g in &c.generators {
            if *g != c.closure {
                bg.push(GenericRule {
                    premise: g.clone(),
                    conclusion: c.closure.difference(g),
                    support: c.support,
                    confidence: Ratio::ONE,
                    kind: RuleKind::Exact,
                });
            }
        }
    }
    let mut ri = Vec::new();
    for &(lo, up) in &hasse {
        let (lo, up) = (&classes[lo].1, &classes[up].1);
        let conf = Ratio::new(up.support as u64, lo.support as u64);
        if conf < params.minconf() {
            continue;
        }
        for g in &lo.generators {
            ri.push(GenericRule {
                premise: g.clone(),
                conclusion: up.closure.difference(g),
                support: up.support,
                confidence: conf,
                kind: RuleKind::Approximate,
            });
        }
    }
    sort_rules(&mut bg);
    sort_rules(&mut ri);

    Ok(OracleResult {
        classes: classes.into_iter().map(|(_, c)| c).collect(),
        hasse,
        bg,
        ri,
    })
}

/// Checks that γ is extensive, idempotent and monotone on every pair of
/// itemsets of `ctx`, and that it agrees with [`TransactionContext::closure`].
pub fn closure_laws_hold(ctx: &TransactionContext, limit: usize) -> Result<bool> {
    check_size(ctx, limit)?;
    let m = Masks::new(ctx);
    let gamma: Vec<u32> = (0..=m.full()).map(|x| m.closure(x)).collect();
    for x in 0..=m.full() {
        let gx = gamma[x as usize];
        if gx & x != x || gamma[gx as usize] != gx {
            return Ok(false);
        }
        if ctx.closure(&to_itemset(x))? != to_itemset(gx) {
            return Ok(false);
        }
        // Monotonicity on immediate supersets is enough by transitivity.
        for i in 0..m.n {
            let y = x | (1 << i);
            if gx & gamma[y as usize] != gx {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ctx() -> TransactionContext {
        TransactionContext::from_transactions(vec![
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![1, 2, 3, 5],
            vec![2, 5],
            vec![1, 2, 3, 5],
        ])
    }

    #[test]
    fn running_example() {
        let params = MiningParams::new(2, Ratio::new(1, 2)).unwrap();
        let r = oracle_mine(&ctx(), &params, DEFAULT_LIMIT).unwrap();
        let closed: Vec<(Vec<u32>, u32)> = r.closed_sets().map(|(c, s)| (c.items().to_vec(), s)).collect();
        assert_eq!(
            closed,
            vec![
                (vec![], 5),
                (vec![1, 4], 4),
                (vec![2], 4),
                (vec![0, 2], 3),
                (vec![1, 2, 4], 3),
                (vec![0, 1, 2, 4], 2),
            ]
        );
        assert_eq!(r.hasse, vec![(0, 1), (0, 2), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]);
        assert_eq!(r.bg.len(), 7);
        assert_eq!(r.ri.len(), 9);
    }

    #[test]
    fn bottom_class_survives_any_threshold() {
        let params = MiningParams::new(6, Ratio::ONE).unwrap();
        let r = oracle_mine(&ctx(), &params, DEFAULT_LIMIT).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert!(r.hasse.is_empty());
    }

    #[test]
    fn worst_case_is_boolean() {
        let c = TransactionContext::worst_case(4).unwrap();
        let r = oracle_mine(&c, &MiningParams::new(1, Ratio::ONE).unwrap(), DEFAULT_LIMIT).unwrap();
        assert_eq!(r.classes.len(), 16);
        assert_eq!(r.hasse.len(), 32);
        assert!(r.bg.is_empty());
    }

    #[test]
    fn size_limit() {
        let wide = TransactionContext::from_transactions(vec![(0..30).collect::<Vec<u32>>()]);
        let p = MiningParams::new(1, Ratio::ONE).unwrap();
        assert_eq!(
            oracle_mine(&wide, &p, DEFAULT_LIMIT),
            Err(Error::OracleTooLarge { items: 30, limit: 20 })
        );
    }

    #[test]
    fn closure_laws() {
        assert_eq!(closure_laws_hold(&ctx(), DEFAULT_LIMIT), Ok(true));
        assert_eq!(
            closure_laws_hold(&TransactionContext::worst_case(5).unwrap(), DEFAULT_LIMIT),
            Ok(true)
        );
    }
}
