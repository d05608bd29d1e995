//! JSON trees for formulas and sequents:
//! `{"op": "imp", "left": …, "right": …}`, `{"op": "atom", "name": "p", "args": []}`,
//! `{"op": "forall", "var": "x", "body": …}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Atom, Formula, Sequent, Term};

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum FormulaRepr {
    Atom {
        name: String,
        #[serde(default)]
        args: Vec<TermRepr>,
    },
    Top,
    And { left: Box<FormulaRepr>, right: Box<FormulaRepr> },
    Or { left: Box<FormulaRepr>, right: Box<FormulaRepr> },
    Imp { left: Box<FormulaRepr>, right: Box<FormulaRepr> },
    Forall { var: String, body: Box<FormulaRepr> },
    Exists { var: String, body: Box<FormulaRepr> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermRepr {
    Var { var: String },
    App { fun: String, args: Vec<TermRepr> },
}

impl From<&Term> for TermRepr {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(v) => TermRepr::Var { var: v.clone() },
            Term::App(f, args) => TermRepr::App { fun: f.clone(), args: args.iter().map(Into::into).collect() },
        }
    }
}

impl From<TermRepr> for Term {
    fn from(t: TermRepr) -> Self {
        match t {
            TermRepr::Var { var } => Term::Var(var),
            TermRepr::App { fun, args } => Term::App(fun, args.into_iter().map(Into::into).collect()),
        }
    }
}

impl From<&Formula> for FormulaRepr {
    fn from(f: &Formula) -> Self {
        let bx = |g: &Formula| Box::new(FormulaRepr::from(g));
        match f {
            Formula::Atom(a) => FormulaRepr::Atom { name: a.name.clone(), args: a.args.iter().map(Into::into).collect() },
            Formula::Top => FormulaRepr::Top,
            Formula::And(a, b) => FormulaRepr::And { left: bx(a), right: bx(b) },
            Formula::Or(a, b) => FormulaRepr::Or { left: bx(a), right: bx(b) },
            Formula::Imp(a, b) => FormulaRepr::Imp { left: bx(a), right: bx(b) },
            Formula::Forall(x, b) => FormulaRepr::Forall { var: x.clone(), body: bx(b) },
            Formula::Exists(x, b) => FormulaRepr::Exists { var: x.clone(), body: bx(b) },
        }
    }
}

impl From<FormulaRepr> for Formula {
    fn from(f: FormulaRepr) -> Self {
        match f {
            FormulaRepr::Atom { name, args } => Formula::Atom(Atom { name, args: args.into_iter().map(Into::into).collect() }),
            FormulaRepr::Top => Formula::Top,
            FormulaRepr::And { left, right } => Formula::and((*left).into(), (*right).into()),
            FormulaRepr::Or { left, right } => Formula::or((*left).into(), (*right).into()),
            FormulaRepr::Imp { left, right } => Formula::imp((*left).into(), (*right).into()),
            FormulaRepr::Forall { var, body } => Formula::forall(var, (*body).into()),
            FormulaRepr::Exists { var, body } => Formula::exists(var, (*body).into()),
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormulaRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FormulaRepr::deserialize(d).map(Into::into)
    }
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    name: String,
    #[serde(default)]
    args: Vec<TermRepr>,
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AtomRepr { name: self.name.clone(), args: self.args.iter().map(Into::into).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AtomRepr::deserialize(d)?;
        Ok(Atom { name: r.name, args: r.args.into_iter().map(Into::into).collect() })
    }
}

#[derive(Serialize, Deserialize)]
struct SequentRepr {
    context: Vec<Formula>,
    goal: Formula,
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SequentRepr { context: self.context.clone(), goal: self.goal.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SequentRepr::deserialize(d)?;
        Ok(Sequent::new(r.context, r.goal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn json_shape_and_round_trip() {
        let f = parse_formula("forall x. P(x, f(y)) -> q & top").unwrap();
        let js = serde_json::to_value(&f).unwrap();
        assert_eq!(js["op"], "forall");
        assert_eq!(js["body"]["op"], "imp");
        assert_eq!(js["body"]["left"]["args"][1]["fun"], "f");
        let back: Formula = serde_json::from_value(js).unwrap();
        assert_eq!(back, f);
    }
}
