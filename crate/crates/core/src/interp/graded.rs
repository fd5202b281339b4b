//! A translation that tracks the complexity class of every source subformula.
//!
//! Each node is rendered in an existential form (`E`) or a universal form (`U`), whichever
//! the node's own level calls for. Atoms with function terms become `∃w⃗ (graphs ∧ A)` or
//! `∀w⃗ (graphs → A)`, the graphs being prenexed in the universal case; bounded source
//! formulas are first put into negation normal form. Over the standard models the result
//! is equivalent to [`translate`](super::translate) because every graph is functional.

use crate::hierarchy::classify;
use crate::logic::{rename_free, Formula, Term};

use super::{BoundRule, InterpError, InterpretationSpec, Names, Template};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    E,
    U,
}

pub fn translate_graded(spec: &InterpretationSpec, f: &Formula) -> Result<Formula, InterpError> {
    let mut g = Graded {
        spec,
        names: Names::new(f.all_vars().iter().map(String::as_str)),
    };
    let c = classify(f);
    let mode = if c.e <= c.u + 1 { Mode::E } else { Mode::U };
    g.render(f, mode)
}

/// Pulls the existential quantifiers of a formula built from `∧`, `∃` and bounded pieces to
/// the front, renaming them apart.
pub fn prenex_exists(f: &Formula) -> (Vec<String>, Formula) {
    let mut ns = Names::new(f.all_vars().iter().map(String::as_str));
    prenex_with(f, &mut ns)
}

fn prenex_with(f: &Formula, ns: &mut Names) -> (Vec<String>, Formula) {
    match f {
        Formula::Exists(x, body) => {
            let x2 = ns.fresh(x);
            let (mut vs, m) = prenex_with(&rename_free(body, x, &x2), ns);
            vs.insert(0, x2);
            (vs, m)
        }
        Formula::And(a, b) => {
            let (mut va, ma) = prenex_with(a, ns);
            let (vb, mb) = prenex_with(b, ns);
            va.extend(vb);
            (va, Formula::and(ma, mb))
        }
        _ => (Vec::new(), f.clone()),
    }
}

/// Negation normal form of a bounded formula, with negation kept on atoms only.
fn nnf(f: &Formula, pos: bool) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Eq(..) => {
            if pos {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }
        Formula::False => {
            if pos {
                Formula::False
            } else {
                Formula::truth()
            }
        }
        Formula::Implies(a, b) if **b == Formula::False => nnf(a, !pos),
        Formula::Implies(a, b) => {
            if pos {
                Formula::or(nnf(a, false), nnf(b, true))
            } else {
                Formula::and(nnf(a, true), nnf(b, false))
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (nnf(a, pos), nnf(b, pos));
            if matches!(f, Formula::And(..)) == pos {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        Formula::BForall(x, bd, body) | Formula::BExists(x, bd, body) => {
            let body = nnf(body, pos);
            let universal = matches!(f, Formula::BForall(..)) == pos;
            if universal {
                Formula::BForall(x.clone(), bd.clone(), Box::new(body))
            } else {
                Formula::BExists(x.clone(), bd.clone(), Box::new(body))
            }
        }
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("unbounded quantifier"),
    }
}

struct Graded<'s> {
    spec: &'s InterpretationSpec,
    names: Names,
}

/// Terms flattened to variables: graph instances in dependency order.
struct Flat {
    vars: Vec<String>,
    graphs: Vec<Formula>,
}

impl Graded<'_> {
    fn dom(&self, x: &str) -> Formula {
        self.spec.domain.on_vars(&[x])
    }

    fn render(&mut self, f: &Formula, mode: Mode) -> Result<Formula, InterpError> {
        if f.is_delta0() {
            return self.bounded_nnf(&nnf(f, true), mode);
        }
        let (se, su) = own_levels(f);
        let mode = match mode {
            Mode::E if se > su + 1 => Mode::U,
            Mode::U if su > se + 1 => Mode::E,
            m => m,
        };
        Ok(match (f, mode) {
            (Formula::And(a, b), m) => Formula::and(self.render(a, m)?, self.render(b, m)?),
            (Formula::Or(a, b), m) => Formula::or(self.render(a, m)?, self.render(b, m)?),
            (Formula::Exists(x, body), _) => {
                Formula::exists(x.clone(), Formula::and(self.dom(x), self.render(body, Mode::E)?))
            }
            (Formula::Forall(x, body), _) => Formula::forall(
                x.clone(),
                Formula::implies(self.dom(x), self.render(body, Mode::U)?),
            ),
            (Formula::Implies(a, b), _) if a.is_delta0() => {
                let na = self.bounded_nnf(&nnf(a, false), Mode::U)?;
                Formula::or(na, self.render(b, Mode::U)?)
            }
            (Formula::Implies(a, b), _) => {
                Formula::implies(self.render(a, Mode::E)?, self.render(b, Mode::U)?)
            }
            (Formula::BForall(x, bd, body) | Formula::BExists(x, bd, body), m) => {
                let univ = matches!(f, Formula::BForall(..));
                let inner = self.render(body, m)?;
                self.quantifier(x, &bd.term, inner, univ, m)?
            }
            _ => unreachable!("bounded leaves are handled above"),
        })
    }

    fn bounded_nnf(&mut self, f: &Formula, mode: Mode) -> Result<Formula, InterpError> {
        Ok(match f {
            Formula::And(a, b) => Formula::and(self.bounded_nnf(a, mode)?, self.bounded_nnf(b, mode)?),
            Formula::Or(a, b) => Formula::or(self.bounded_nnf(a, mode)?, self.bounded_nnf(b, mode)?),
            Formula::BForall(x, bd, body) | Formula::BExists(x, bd, body) => {
                let univ = matches!(f, Formula::BForall(..));
                let inner = self.bounded_nnf(body, mode)?;
                self.quantifier(x, &bd.term, inner, univ, mode)?
            }
            Formula::False => Formula::False,
            lit => {
                let (atom, pos) = match lit.as_negation() {
                    Some(a) => (a, false),
                    None => (lit, true),
                };
                if *atom == Formula::False {
                    return Ok(Formula::truth());
                }
                let (name, args) = match atom {
                    Formula::Atom(p, ts) => (p.as_str(), ts.clone()),
                    Formula::Eq(a, b) => ("=", vec![a.clone(), b.clone()]),
                    other => unreachable!("not a literal: {other}"),
                };
                let t = self.spec.predicate(name)?.clone();
                let mut flat = Flat {
                    vars: Vec::new(),
                    graphs: Vec::new(),
                };
                let vs = self.flatten_all(&args, &mut flat)?;
                let vs: Vec<&str> = vs.iter().map(String::as_str).collect();
                let core = t.on_vars(&vs);
                let core = if pos { core } else { Formula::not(core) };
                self.wrap(flat, core, mode)?
            }
        })
    }

    fn flatten_all(&mut self, args: &[Term], flat: &mut Flat) -> Result<Vec<String>, InterpError> {
        args.iter().map(|t| self.flatten(t, flat)).collect()
    }

    fn flatten(&mut self, t: &Term, flat: &mut Flat) -> Result<String, InterpError> {
        match t {
            Term::Var(v) => Ok(v.clone()),
            Term::App(sym, sub) => {
                let graph = self.spec.function(sym)?.clone();
                let mut ins = self.flatten_all(sub, flat)?;
                let y = self.names.fresh("y");
                ins.push(y.clone());
                let ins: Vec<&str> = ins.iter().map(String::as_str).collect();
                flat.graphs.push(graph.on_vars(&ins));
                flat.vars.push(y.clone());
                Ok(y)
            }
        }
    }

    /// `∃w⃗ (graphs ∧ core)` or `∀w⃗ (graphs → core)` with the graphs' own witnesses
    /// pulled into the universal prefix.
    fn wrap(&mut self, flat: Flat, core: Formula, mode: Mode) -> Result<Formula, InterpError> {
        if flat.vars.is_empty() {
            return Ok(core);
        }
        Ok(match mode {
            Mode::E => {
                let mut parts = flat.graphs;
                parts.push(core);
                Formula::exists_many(&flat.vars, Formula::and_all(parts))
            }
            Mode::U => {
                let mut vars = flat.vars;
                let mut ms = Vec::new();
                for g in &flat.graphs {
                    let (ws, m) = prenex_with(g, &mut self.names);
                    vars.extend(ws);
                    ms.push(m);
                }
                Formula::forall_many(&vars, Formula::implies(Formula::and_all(ms), core))
            }
        })
    }

    fn graph_u(&mut self, g: &Template, a: &str, b: &str, body: Formula) -> Formula {
        let (ws, m) = prenex_with(&g.on_vars(&[a, b]), &mut self.names);
        Formula::forall_many(&ws, Formula::implies(m, body))
    }

    fn quantifier(
        &mut self,
        x: &str,
        bound: &Term,
        body: Formula,
        univ: bool,
        mode: Mode,
    ) -> Result<Formula, InterpError> {
        let mut flat = Flat {
            vars: Vec::new(),
            graphs: Vec::new(),
        };
        let b = self.flatten(bound, &mut flat)?;
        let dom = self.dom(x);
        let q = match self.spec.bound.clone() {
            BoundRule::Rebound { kind, rel } => {
                let mut guards = vec![dom];
                if let Some(r) = rel {
                    guards.push(r.on_vars(&[x, &b]));
                }
                if univ {
                    let negs = guards.into_iter().map(Formula::not);
                    let body = negs.rev().fold(body, |acc, g| Formula::or(g, acc));
                    Formula::bforall(x, kind, Term::var(&b), body)
                } else {
                    guards.push(body);
                    Formula::bexists(x, kind, Term::var(&b), Formula::and_all(guards))
                }
            }
            BoundRule::Through { graph } => {
                let (t, xx) = (self.names.fresh("T"), self.names.fresh("X"));
                match mode {
                    Mode::E => {
                        let inner = Formula::exists(
                            x,
                            Formula::and_all([dom, graph.on_vars(&[x, &xx]), body]),
                        );
                        let q = if univ {
                            Formula::all_in(xx, Term::var(&t), inner)
                        } else {
                            Formula::some_in(xx, Term::var(&t), inner)
                        };
                        Formula::exists(t.clone(), Formula::and(graph.on_vars(&[&b, &t]), q))
                    }
                    Mode::U => {
                        let tail = if univ {
                            Formula::or(Formula::not(dom), body)
                        } else {
                            Formula::and(dom, body)
                        };
                        let per = self.graph_u(&graph, x, &xx, tail);
                        let inner = Formula::forall(x, per);
                        let q = if univ {
                            Formula::all_in(xx, Term::var(&t), inner)
                        } else {
                            Formula::some_in(xx, Term::var(&t), inner)
                        };
                        let outer = self.graph_u(&graph, &b, &t, q);
                        Formula::forall(t, outer)
                    }
                }
            }
            BoundRule::Relation { rel } => {
                let r = rel.on_vars(&[x, &b]);
                if univ {
                    Formula::forall(x, Formula::implies(dom, Formula::implies(r, body)))
                } else {
                    Formula::exists(x, Formula::and_all([dom, r, body]))
                }
            }
        };
        self.wrap(flat, q, mode)
    }
}

/// Levels reachable by the node's own constructor, before the cross inclusions.
fn own_levels(f: &Formula) -> (u32, u32) {
    const INF: u32 = u32::MAX / 4;
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (classify(a), classify(b));
            (a.e.max(b.e), a.u.max(b.u))
        }
        Formula::BForall(_, _, body) | Formula::BExists(_, _, body) => {
            let c = classify(body);
            (c.e, c.u)
        }
        Formula::Exists(_, body) => (classify(body).e.max(1), INF),
        Formula::Forall(_, body) => (INF, classify(body).u.max(1)),
        Formula::Implies(a, b) => {
            let (a, b) = (classify(a), classify(b));
            (INF, 1.max(a.e + 1).max(b.u))
        }
        _ => (0, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::{interp_a, interp_b, translate};
    use crate::logic::{parse, Signature};

    fn check(spec: &InterpretationSpec, text: &str, sig: &Signature) {
        let f = parse(text, sig).unwrap();
        let g = translate_graded(spec, &f).unwrap();
        assert_eq!(g.free_vars(), f.free_vars(), "{text}");
        g.check(&spec.target).unwrap();
        let (s, t) = (classify(&f), classify(&g));
        assert!(t.e <= s.e.max(1), "{text}: {s} -> {t}");
    }

    #[test]
    fn b_levels() {
        let sig = Signature::arith_plus();
        let b = interp_b();
        for text in [
            "~S(x) = y",
            "forall x < S(y). ~x + y = z",
            "forall x. exists y < x * x. ~S(y) = x",
            "(exists y. x = S(y)) -> forall z < x. z = z",
            "forall x. x = 0 \\/ exists y. x = S(y)",
        ] {
            check(&b, text, &sig);
        }
    }

    #[test]
    fn a_levels() {
        let sig = Signature::set();
        let a = interp_a();
        for text in [
            "forall y in x. exists z. z in y",
            "forall x. forall y in x. exists z. z in y /\\ y in z",
            "~x in y",
        ] {
            check(&a, text, &sig);
            let f = parse(text, &sig).unwrap();
            assert_eq!(translate(&a, &f).unwrap().free_vars(), f.free_vars());
        }
    }

    #[test]
    fn prenex_pulls_graph_witnesses() {
        let (ws, m) = prenex_exists(&crate::interp::p_graph_formula());
        assert_eq!(ws.len(), 2);
        assert!(m.is_delta0());
    }
}
