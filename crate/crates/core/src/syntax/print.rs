use super::Formula;

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const ATOM: u8 = 4;

/// Prints with minimal parentheses; the output re-parses to an
/// alpha-equivalent formula.
pub fn print_logical(f: &Formula) -> String {
    let mut out = String::new();
    logical(f, 0, &mut out);
    out
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) | Formula::Top => ATOM,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Imp(..) => IMP,
        Formula::Forall(..) | Formula::Exists(..) => 0,
    }
}

fn logical(f: &Formula, min: u8, out: &mut String) {
    let paren = level(f) < min || (min > 0 && level(f) == 0);
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::Top => out.push_str("top"),
        Formula::And(a, b) => {
            logical(a, AND, out);
            out.push_str(" & ");
            logical(b, ATOM, out);
        }
        Formula::Or(a, b) => {
            logical(a, OR, out);
            out.push_str(" | ");
            logical(b, AND, out);
        }
        Formula::Imp(a, b) => {
            logical(a, OR, out);
            out.push_str(" -> ");
            logical(b, IMP, out);
        }
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(x);
            out.push_str(". ");
            logical(b, 0, out);
        }
    }
    if paren {
        out.push(')');
    }
}

const SUM: u8 = 1;
const PROD: u8 = 2;
const POW: u8 = 3;

/// Exponential-polynomial notation: `∧` is juxtaposition, `∨` is `+`,
/// `F→G` is `G^F`, `∃x F` is `xF`, `∀x F` is `F^x`, `⊤` is `1`.
pub fn print_polynomial(f: &Formula) -> String {
    poly(f, 0)
}

fn poly_level(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) | Formula::Top => POW + 1,
        Formula::Imp(..) | Formula::Forall(..) => POW,
        Formula::And(..) | Formula::Exists(..) => PROD,
        Formula::Or(..) => SUM,
    }
}

fn poly(f: &Formula, min: u8) -> String {
    let body = match f {
        Formula::Atom(a) => a.to_string(),
        Formula::Top => "1".to_string(),
        Formula::Or(a, b) => format!("{}+{}", poly(a, SUM), poly(b, PROD)),
        Formula::And(a, b) => juxtapose(&poly(a, PROD), &poly(b, POW)),
        Formula::Exists(x, b) => juxtapose(x, &poly(b, POW)),
        Formula::Imp(a, b) => format!("{}^{}", poly(b, POW + 1), poly(a, POW + 1)),
        Formula::Forall(x, b) => format!("{}^{}", poly(b, POW + 1), x),
    };
    if poly_level(f) < min {
        format!("({body})")
    } else {
        body
    }
}

fn juxtapose(a: &str, b: &str) -> String {
    if a.chars().count() == 1 && b.chars().count() == 1 {
        format!("{a}{b}")
    } else {
        format!("{a} {b}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(print_polynomial(&p("p & q -> r")), "r^(pq)");
        assert_eq!(print_polynomial(&p("p -> q | r")), "(q+r)^p");
        assert_eq!(print_polynomial(&p("forall x. P(x) -> q")), "(q^P(x))^x");
        assert_eq!(print_polynomial(&p("top")), "1");
        assert_eq!(print_polynomial(&p("exists x. P(x) | Q(x)")), "x (P(x)+Q(x))");
    }

    #[test]
    fn logical_round_trips() {
        for s in [
            "p -> q -> r",
            "(p -> q) -> r",
            "a & (b & c)",
            "(a | b) & c",
            "a | b & c",
            "(forall x. P(x)) & q",
            "forall x. exists y. R(x, y) -> S(f(y))",
            "top | (p -> top)",
        ] {
            let f = p(s);
            let printed = print_logical(&f);
            assert!(p(&printed).alpha_eq(&f), "{s} printed as {printed}");
        }
        assert_eq!(print_logical(&p("p -> q -> r")), "p -> q -> r");
        assert_eq!(print_logical(&p("(p -> q) -> r")), "(p -> q) -> r");
    }
}
