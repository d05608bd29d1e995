use super::{Base, Conj, Factor, Nf};

/// Polynomial notation. Unless `verbose_units` is set, trivial exponents
/// `^1` and trailing `·1` factors are left out.
pub fn print_nf(e: &Nf, verbose_units: bool) -> String {
    match e {
        Nf::Conj(c) => print_conj(c, verbose_units),
        Nf::Sum(d) => d.summands().iter().map(|c| print_conj(c, verbose_units)).collect::<Vec<_>>().join(" + "),
    }
}

pub fn print_conj(c: &Conj, verbose_units: bool) -> String {
    if c.is_one() {
        return "1".to_string();
    }
    let parts: Vec<String> = c.factors.iter().map(|f| factor(f, verbose_units)).collect();
    if verbose_units {
        format!("{}·1", parts.join("·"))
    } else {
        parts.join(" ")
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains([' ', '·', '+', '^'])
}

fn wrap(s: String) -> String {
    if needs_parens(&s) {
        format!("({s})")
    } else {
        s
    }
}

fn factor(f: &Factor, verbose: bool) -> String {
    let base = match &f.base {
        Base::Prime(a) => a.to_string(),
        Base::Sum(d) => {
            format!("({})", d.summands().iter().map(|c| print_conj(c, verbose)).collect::<Vec<_>>().join(" + "))
        }
        Base::Ex { vars, body } => format!("({}.{})", vars.0.join(","), print_conj(body, verbose)),
    };
    let pow = if f.exp.is_one() && !verbose { base } else { format!("{base}^{}", wrap(print_conj(&f.exp, verbose))) };
    match f.vars.0.as_slice() {
        [] => pow,
        [x] => format!("{}^{x}", wrap(pow)),
        xs => format!("{}^({})", wrap(pow), xs.join(",")),
    }
}

pub fn latex_nf(e: &Nf) -> String {
    e.summands().iter().map(latex_conj).collect::<Vec<_>>().join(" + ")
}

/// LaTeX polynomial notation, trivial units left out.
pub fn latex_conj(c: &Conj) -> String {
    if c.is_one() {
        return "1".into();
    }
    c.factors.iter().map(latex_factor).collect::<Vec<_>>().join("\\,")
}

fn latex_factor(f: &Factor) -> String {
    let base = match &f.base {
        Base::Prime(a) => a.to_string(),
        Base::Sum(d) => format!("({})", d.summands().iter().map(latex_conj).collect::<Vec<_>>().join(" + ")),
        Base::Ex { vars, body } => format!("({}.\\,{})", vars.0.join(","), latex_conj(body)),
    };
    let pow = if f.exp.is_one() { base } else { format!("{base}^{{{}}}", latex_conj(&f.exp)) };
    if f.vars.is_empty() {
        pow
    } else {
        format!("{{({pow})}}^{{{}}}", f.vars.0.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::enf;
    use crate::syntax::parse_formula;

    fn show(s: &str, verbose: bool) -> String {
        print_nf(&enf(&parse_formula(s).unwrap()), verbose)
    }

    #[test]
    fn units_suppressed_by_default() {
        assert_eq!(show("p", false), "p");
        assert_eq!(show("p", true), "p^1·1");
        assert_eq!(show("p -> q", false), "q^p");
        assert_eq!(show("p -> q", true), "q^(p^1·1)·1");
        assert_eq!(show("top", false), "1");
    }

    #[test]
    fn sums_and_quantifiers() {
        assert_eq!(show("p | q & r", false), "p + q r");
        assert_eq!(show("forall x. P(x) -> q", false), "(q^P(x))^x");
        assert_eq!(show("exists x. P(x)", false), "(x.P(x))");
        assert_eq!(show("p -> q | r", false), "(q + r)^p");
    }
}
