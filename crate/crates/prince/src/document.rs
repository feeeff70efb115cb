//! The serialized form of a mining run: classes, cover arcs and rules, all
//! expressed in external item labels.
//!
//! Both the pipeline and the oracle can be rendered into a
//! [`LatticeDocument`], so cross-checking reduces to comparing two
//! documents. JSON output has sorted keys and is byte-stable.

use std::fmt;

use prince_core::oracle::OracleResult;
use prince_core::{GenericRule, Itemset, Mined, MiningParams, RuleKind, TransactionContext};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub name: String,
    pub objects: usize,
    pub items: usize,
    pub minsupp: u32,
    pub minconf_num: u64,
    pub minconf_den: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub id: usize,
    pub support: u32,
    pub closure: Vec<u32>,
    pub generators: Vec<Vec<u32>>,
    pub upper_covers: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Approximate,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RuleEntry {
    pub kind: Kind,
    pub premise: Vec<u32>,
    pub conclusion: Vec<u32>,
    pub support: u32,
    pub confidence_num: u64,
    pub confidence_den: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub metadata: Metadata,
    pub classes: Vec<ClassEntry>,
    pub rules: Vec<RuleEntry>,
}

fn metadata(ctx: &TransactionContext, name: &str, params: &MiningParams) -> Metadata {
    Metadata {
        name: name.to_owned(),
        objects: ctx.num_objects(),
        items: ctx.num_items(),
        minsupp: params.minsupp(),
        minconf_num: params.minconf().num(),
        minconf_den: params.minconf().den(),
    }
}

fn rule_entry(ctx: &TransactionContext, r: &GenericRule) -> RuleEntry {
    RuleEntry {
        kind: match r.kind {
            RuleKind::Exact => Kind::Exact,
            RuleKind::Approximate => Kind::Approximate,
        },
        premise: ctx.labels_of(&r.premise),
        conclusion: ctx.labels_of(&r.conclusion),
        support: r.support,
        confidence_num: r.confidence.num(),
        confidence_den: r.confidence.den(),
    }
}

fn labels_all(ctx: &TransactionContext, sets: impl IntoIterator<Item = Itemset>) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = sets.into_iter().map(|s| ctx.labels_of(&s)).collect();
    out.sort();
    out
}

impl LatticeDocument {
    pub fn from_pipeline(ctx: &TransactionContext, name: &str, params: &MiningParams, mined: &Mined) -> Self {
        let lattice = &mined.lattice;
        let classes = lattice
            .classes
            .iter()
            .enumerate()
            .map(|(id, c)| {
                let mut upper: Vec<usize> = c.upper_covers.iter().map(|u| u.index()).collect();
                upper.sort_unstable();
                ClassEntry {
                    id,
                    support: c.support,
                    closure: ctx.labels_of(c.closure.as_ref().expect("stage 3 derives every closure")),
                    generators: labels_all(ctx, c.members.iter().map(|&g| mined.miner.generator(g).itemset.clone())),
                    upper_covers: upper,
                }
            })
            .collect();
        let rules = mined
            .rules
            .bg
            .iter()
            .chain(&mined.rules.ri)
            .map(|r| rule_entry(ctx, r))
            .collect();
        LatticeDocument {
            metadata: metadata(ctx, name, params),
            classes,
            rules,
        }
    }

    pub fn from_oracle(ctx: &TransactionContext, name: &str, params: &MiningParams, oracle: &OracleResult) -> Self {
        let classes = oracle
            .classes
            .iter()
            .enumerate()
            .map(|(id, c)| ClassEntry {
                id,
                support: c.support,
                closure: ctx.labels_of(&c.closure),
                generators: labels_all(ctx, c.generators.iter().cloned()),
                upper_covers: oracle
                    .hasse
                    .iter()
                    .filter(|(lo, _)| *lo == id)
                    .map(|&(_, up)| up)
                    .collect(),
            })
            .collect();
        let rules = oracle.bg.iter().chain(&oracle.ri).map(|r| rule_entry(ctx, r)).collect();
        LatticeDocument {
            metadata: metadata(ctx, name, params),
            classes,
            rules,
        }
    }

    pub fn num_arcs(&self) -> usize {
        self.classes.iter().map(|c| c.upper_covers.len()).sum()
    }

    pub fn count_rules(&self, kind: Kind) -> usize {
        self.rules.iter().filter(|r| r.kind == kind).count()
    }

    /// Pretty JSON with keys in sorted order and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's default map keeps keys sorted.
        let value = serde_json::to_value(self).expect("document is plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Field-level differences between `self` (expected) and `other`.
    /// Empty iff the documents are equal.
    pub fn diff(&self, other: &LatticeDocument) -> Vec<Difference> {
        let mut out = Vec::new();
        let mut field = |path: String, a: String, b: String| {
            if a != b {
                out.push(Difference::Changed {
                    path,
                    expected: a,
                    found: b,
                });
            }
        };
        let (m, n) = (&self.metadata, &other.metadata);
        field("metadata.name".into(), m.name.clone(), n.name.clone());
        field("metadata.objects".into(), m.objects.to_string(), n.objects.to_string());
        field("metadata.items".into(), m.items.to_string(), n.items.to_string());
        field("metadata.minsupp".into(), m.minsupp.to_string(), n.minsupp.to_string());
        field(
            "metadata.minconf".into(),
            format!("{}/{}", m.minconf_num, m.minconf_den),
            format!("{}/{}", n.minconf_num, n.minconf_den),
        );
        field(
            "classes.len".into(),
            self.classes.len().to_string(),
            other.classes.len().to_string(),
        );
        for (a, b) in self.classes.iter().zip(&other.classes) {
            let p = format!("classes[{}]", a.id);
            field(format!("{p}.id"), a.id.to_string(), b.id.to_string());
            field(format!("{p}.support"), a.support.to_string(), b.support.to_string());
            field(
                format!("{p}.closure"),
                format!("{:?}", a.closure),
                format!("{:?}", b.closure),
            );
            field(
                format!("{p}.generators"),
                format!("{:?}", a.generators),
                format!("{:?}", b.generators),
            );
            field(
                format!("{p}.upper_covers"),
                format!("{:?}", a.upper_covers),
                format!("{:?}", b.upper_covers),
            );
        }
        for r in &self.rules {
            if !other.rules.contains(r) {
                out.push(Difference::MissingRule(r.clone()));
            }
        }
        for r in &other.rules {
            if !self.rules.contains(r) {
                out.push(Difference::ExtraRule(r.clone()));
            }
        }
        if out.is_empty() && self.rules != other.rules {
            out.push(Difference::RuleOrder);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    Changed {
        path: String,
        expected: String,
        found: String,
    },
    MissingRule(RuleEntry),
    ExtraRule(RuleEntry),
    RuleOrder,
}

impl fmt::Display for RuleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} => {} (supp={}, conf={}/{})",
            crate::export::label_set(&self.premise),
            crate::export::label_set(&self.conclusion),
            self.support,
            self.confidence_num,
            self.confidence_den
        )
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Difference::Changed { path, expected, found } => {
                write!(f, "{path}: expected {expected}, found {found}")
            }
            Difference::MissingRule(r) => write!(f, "missing rule: {r}"),
            Difference::ExtraRule(r) => write!(f, "unexpected rule: {r}"),
            Difference::RuleOrder => f.write_str("rules: same set, different order"),
        }
    }
}
