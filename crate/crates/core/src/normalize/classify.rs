use serde::Serialize;

use super::{Base, Conj, Nf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TopClass {
    /// A sum, class `D`.
    Sigma,
    /// A product, class `C`.
    Pi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum ClassTree {
    Sigma { summands: Vec<ClassTree> },
    Pi { factors: Vec<FactorClass> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorClass {
    pub vars: Vec<String>,
    pub base: BaseClass,
    pub exponent: ClassTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseClass {
    Prime { atom: String },
    Sum { summands: Vec<ClassTree> },
    Ex { vars: Vec<String>, body: ClassTree },
}

/// Maximal nesting of each constructor along any path of the class tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Depth {
    pub sigma: usize,
    pub pi: usize,
    pub exists: usize,
}

impl Depth {
    fn max(self, other: Depth) -> Depth {
        Depth { sigma: self.sigma.max(other.sigma), pi: self.pi.max(other.pi), exists: self.exists.max(other.exists) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub top: TopClass,
    /// Summands of a sum or factors of a product.
    pub width: usize,
    pub depth: Depth,
    pub tree: ClassTree,
}

pub fn classify(e: &Nf) -> ClassReport {
    match e {
        Nf::Conj(c) => {
            let (tree, depth) = conj_tree(c);
            ClassReport { top: TopClass::Pi, width: c.len(), depth, tree }
        }
        Nf::Sum(d) => {
            let (summands, depth) = sum_trees(d.summands());
            ClassReport { top: TopClass::Sigma, width: d.len(), depth, tree: ClassTree::Sigma { summands } }
        }
    }
}

fn sum_trees(cs: &[Conj]) -> (Vec<ClassTree>, Depth) {
    let mut depth = Depth::default();
    let trees = cs
        .iter()
        .map(|c| {
            let (t, d) = conj_tree(c);
            depth = depth.max(d);
            t
        })
        .collect();
    depth.sigma += 1;
    (trees, depth)
}

fn conj_tree(c: &Conj) -> (ClassTree, Depth) {
    let mut depth = Depth::default();
    let factors = c
        .factors
        .iter()
        .map(|f| {
            let (exponent, de) = conj_tree(&f.exp);
            let (base, db) = match &f.base {
                Base::Prime(a) => (BaseClass::Prime { atom: a.to_string() }, Depth::default()),
                Base::Sum(d) => {
                    let (summands, dd) = sum_trees(d.summands());
                    (BaseClass::Sum { summands }, dd)
                }
                Base::Ex { vars, body } => {
                    let (body, mut dd) = conj_tree(body);
                    dd.exists += 1;
                    (BaseClass::Ex { vars: vars.0.clone(), body }, dd)
                }
            };
            depth = depth.max(de).max(db);
            FactorClass { vars: f.vars.0.clone(), base, exponent }
        })
        .collect();
    depth.pi += 1;
    (ClassTree::Pi { factors }, depth)
}
