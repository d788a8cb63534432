// Canonical text forms; every printed formula parses back.

use std::fmt;

use super::{Atom, BSentence, InvCondition, PPFormula, Rel, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.iter().enumerate() {
            let neg = c.looks_negative();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{x}")?;
            } else if mag.is_atomic() {
                write!(f, "{x}*{mag}")?;
            } else {
                write!(f, "{x}*({mag})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(t) => write!(f, "{t} = 0"),
            Atom::Vp(d, t) => write!(f, "V[{d}]({t})"),
        }
    }
}

impl fmt::Display for PPFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.bound.is_empty() {
            write!(f, "E {} . ", self.bound.join(" "))?;
        }
        if self.atoms.is_empty() {
            return write!(f, "0 = 0");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rel::Gt1 => write!(f, ">1"),
            Rel::Eq1 => write!(f, "=1"),
        }
    }
}

impl fmt::Display for InvCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Inv({} | {}) {}", self.phi, self.psi, self.rel)
    }
}

fn wrapped(s: &BSentence, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match s {
        BSentence::And(..) | BSentence::Or(..) => write!(f, "({s})"),
        _ => write!(f, "{s}"),
    }
}

impl fmt::Display for BSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BSentence::Inv(c) => write!(f, "{c}"),
            BSentence::Closed(p) => write!(f, "{{ {p} }}"),
            BSentence::Not(s) => {
                write!(f, "!")?;
                wrapped(s, f)
            }
            BSentence::And(a, b) | BSentence::Or(a, b) => {
                wrapped(a, f)?;
                write!(f, "{}", if matches!(self, BSentence::And(..)) { " & " } else { " | " })?;
                wrapped(b, f)
            }
        }
    }
}
