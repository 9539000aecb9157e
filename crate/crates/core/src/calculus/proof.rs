use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Name, SpecPath};

/// The rule that justifies a proof node, with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "detail")]
pub enum Rule {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B { spec: SpecPath, index: usize },
    #[serde(rename = "c", rename_all = "camelCase")]
    C {
        pos_spec: SpecPath,
        neg_spec: SpecPath,
        #[serde(rename = "generalName")]
        general: Name,
        #[serde(rename = "freshElemName")]
        fresh: Name,
    },
    #[serde(rename = "c_circ")]
    CCirc {
        #[serde(rename = "hybridGeneral")]
        general: Name,
        #[serde(rename = "hybridElem")]
        elem: Name,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::A => "a",
            Rule::B { .. } => "b",
            Rule::C { .. } => "c",
            Rule::CCirc { .. } => "c°",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub conclusion: Formula,
    #[serde(flatten)]
    pub rule: Rule,
    #[serde(default)]
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    pub fn leaf(conclusion: Formula) -> ProofNode {
        ProofNode { conclusion, rule: Rule::A, children: Vec::new() }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofNode::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(ProofNode::height).max().unwrap_or(0)
    }

    /// Pre-order visit with the child-index path of each node.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a ProofNode)) {
        fn go<'a>(n: &'a ProofNode, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &'a ProofNode)) {
            f(path, n);
            for (i, c) in n.children.iter().enumerate() {
                path.push(i);
                go(c, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    /// The node reached by following child indices.
    pub fn at(&self, path: &[usize]) -> Option<&ProofNode> {
        path.iter().try_fold(self, |n, &i| n.children.get(i))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof serializes")
    }

    pub fn from_json(text: &str) -> Result<ProofNode, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Indented listing, conclusion first, premises below.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.visit(&mut |path, n| {
            let detail = match &n.rule {
                Rule::A => String::new(),
                Rule::B { spec, index } => format!(" at `{spec}` choosing {index}"),
                Rule::C { pos_spec, neg_spec, general, fresh } => {
                    format!(" {general} at `{pos_spec}`/`{neg_spec}` ↦ {fresh}")
                }
                Rule::CCirc { general, elem } => format!(" {general}_{elem} ↦ {general}"),
            };
            let _ = writeln!(out, "{}{}   [{}{}]", "  ".repeat(path.len()), n.conclusion, n.rule.name(), detail);
        });
        out
    }
}
