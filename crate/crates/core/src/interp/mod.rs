//! Relativizing translations between signatures, and the three concrete interpretations:
//! `a` (sets as Ackermann codes), `o` (numbers as von Neumann ordinals) and `b` (numbers as
//! arbitrary sets through the bijection `P`).

mod graded;
mod graphs;

pub use graded::{prenex_exists, translate_graded};
pub use graphs::{
    graph_formula, graph_formula_on, omega_formula, omega_formula_on, p_graph_formula,
    p_graph_formula_on, succ_formula, zero_formula,
};
pub(crate) use graphs::Names;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hf::OrdOp;
use crate::logic::{substitute_all, BoundKind, Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("interpretation {interp} has no translation for {sym:?}")]
    Missing { sym: String, interp: String },
    #[error("cannot compose: {inner} targets {target}, {outer} reads {reads}")]
    Mismatch {
        outer: String,
        inner: String,
        target: String,
        reads: String,
    },
}

/// A formula with named parameters, instantiated by substitution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Template {
    pub params: Vec<String>,
    pub body: Formula,
}

impl Template {
    pub fn new<S: Into<String>>(params: impl IntoIterator<Item = S>, body: Formula) -> Self {
        Template {
            params: params.into_iter().map(Into::into).collect(),
            body,
        }
    }

    pub fn instantiate(&self, args: &[Term]) -> Formula {
        assert_eq!(args.len(), self.params.len(), "template arity");
        let map: BTreeMap<String, Term> = self
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        substitute_all(&self.body, &map)
    }

    pub fn on_vars(&self, args: &[&str]) -> Formula {
        let ts: Vec<Term> = args.iter().map(|a| Term::var(*a)).collect();
        self.instantiate(&ts)
    }
}

/// How a source bounded quantifier `Qx K b. φ` is rendered once `b` is a variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundRule {
    /// A target bounded quantifier of `kind` over `b`, guarded by the domain formula and,
    /// if present, by `rel(x, b)`.
    Rebound {
        kind: BoundKind,
        rel: Option<Template>,
    },
    /// Through a graph `G` of a map into numerals: `∃T (G(b,T) ∧ QX∈T ∃x (G(x,X) ∧ φ))`.
    Through { graph: Template },
    /// Unbounded, guarded by `rel(x, b)`.
    Relation { rel: Template },
}

#[derive(Debug, Clone, Serialize)]
pub struct InterpretationSpec {
    pub name: String,
    pub source: Signature,
    pub target: Signature,
    /// `π_∀(x)`.
    pub domain: Template,
    /// `π_P` for each source predicate, and for `=`.
    pub predicates: BTreeMap<String, Template>,
    /// `π_f(x⃗, y)`, result parameter last.
    pub functions: BTreeMap<String, Template>,
    pub bound: BoundRule,
}

#[derive(Debug, Clone, Serialize)]
pub struct Obligation {
    pub label: String,
    pub formula: Formula,
}

fn vt(s: &str) -> Term {
    Term::var(s)
}

/// `x < b` as a bounded formula.
fn lt_formula(x: &str, b: &str) -> Formula {
    let z = if x == "z" || b == "z" { "z_1" } else { "z" };
    Formula::bexists(z, BoundKind::Lt, vt(b), Formula::eq(vt(z), vt(x)))
}

fn relation_of_kind(kind: BoundKind, x: &str, b: &str) -> Formula {
    match kind {
        BoundKind::Lt => lt_formula(x, b),
        BoundKind::In => Formula::member(vt(x), vt(b)),
    }
}

impl InterpretationSpec {
    pub fn identity(sig: &Signature) -> Self {
        let mut predicates = BTreeMap::new();
        predicates.insert("=".to_string(), Template::new(["x0", "x1"], Formula::eq(vt("x0"), vt("x1"))));
        for (p, n) in &sig.predicates {
            let ps: Vec<String> = (0..*n).map(|i| format!("x{i}")).collect();
            let body = Formula::Atom(p.clone(), ps.iter().map(|s| vt(s)).collect());
            predicates.insert(p.clone(), Template::new(ps, body));
        }
        let mut functions = BTreeMap::new();
        for (f, n) in &sig.functions {
            let mut ps: Vec<String> = (0..*n).map(|i| format!("x{i}")).collect();
            let app = Term::App(f.clone(), ps.iter().map(|s| vt(s)).collect());
            ps.push("y".into());
            functions.insert(f.clone(), Template::new(ps, Formula::eq(app, vt("y"))));
        }
        InterpretationSpec {
            name: format!("1_{}", sig.name),
            source: sig.clone(),
            target: sig.clone(),
            domain: Template::new(["x"], Formula::eq(vt("x"), vt("x"))),
            predicates,
            functions,
            bound: BoundRule::Rebound {
                kind: sig.bound,
                rel: None,
            },
        }
    }

    /// `x ∈ b` and `x < b`, or their images, as a formula in `x`, `b` over the target.
    pub fn bound_relation(&self, x: &str, b: &str) -> Formula {
        match &self.bound {
            BoundRule::Rebound { kind, rel } => {
                let base = relation_of_kind(*kind, x, b);
                match rel {
                    Some(r) => Formula::and(base, r.on_vars(&[x, b])),
                    None => base,
                }
            }
            BoundRule::Through { graph } => {
                let mut ns = Names::new([x, b]);
                let (t, xx) = (ns.fresh("T"), ns.fresh("X"));
                Formula::exists_many(
                    &[t.clone(), xx.clone()],
                    Formula::and_all([
                        graph.on_vars(&[b, &t]),
                        graph.on_vars(&[x, &xx]),
                        Formula::member(vt(&xx), vt(&t)),
                    ]),
                )
            }
            BoundRule::Relation { rel } => rel.on_vars(&[x, b]),
        }
    }

    fn missing(&self, sym: &str) -> InterpError {
        InterpError::Missing {
            sym: sym.to_string(),
            interp: self.name.clone(),
        }
    }

    pub fn predicate(&self, p: &str) -> Result<&Template, InterpError> {
        self.predicates.get(p).ok_or_else(|| self.missing(p))
    }

    pub fn function(&self, f: &str) -> Result<&Template, InterpError> {
        self.functions.get(f).ok_or_else(|| self.missing(f))
    }
}

/// Sets as numbers: `a ∈ b` is "bit `a` of `b` is set".
pub fn interp_a() -> InterpretationSpec {
    let two = || Term::succ(Term::succ(Term::zero()));
    let (a, b) = (vt("a"), vt("b"));
    let pow = Term::exp(two(), a.clone());
    let body = Formula::eq(
        b.clone(),
        Term::add(
            Term::mul(Term::add(Term::mul(two(), vt("m")), Term::succ(Term::zero())), pow.clone()),
            vt("r"),
        ),
    );
    let eps = Formula::bexists(
        "r",
        BoundKind::Lt,
        pow,
        Formula::bexists("m", BoundKind::Lt, Term::succ(b), body),
    );
    let mut predicates = BTreeMap::new();
    predicates.insert("=".to_string(), Template::new(["x0", "x1"], Formula::eq(vt("x0"), vt("x1"))));
    predicates.insert("in".to_string(), Template::new(["a", "b"], eps.clone()));
    InterpretationSpec {
        name: "a".into(),
        source: Signature::set(),
        target: Signature::arith_plus(),
        domain: Template::new(["x"], Formula::eq(vt("x"), vt("x"))),
        predicates,
        functions: BTreeMap::new(),
        bound: BoundRule::Rebound {
            kind: BoundKind::Lt,
            rel: Some(Template::new(["a", "b"], eps)),
        },
    }
}

fn ordinal_functions() -> BTreeMap<String, Template> {
    let mut fs = BTreeMap::new();
    fs.insert("0".to_string(), Template::new(["y"], zero_formula("y")));
    fs.insert("S".to_string(), Template::new(["x0", "y"], succ_formula("x0", "y")));
    for (sym, op) in [("+", OrdOp::Add), ("*", OrdOp::Mul), ("exp", OrdOp::Exp)] {
        fs.insert(
            sym.to_string(),
            Template::new(["x0", "x1", "y"], graph_formula_on(op, "x0", "x1", "y")),
        );
    }
    fs
}

/// Numbers as von Neumann ordinals, over the domain `ω`.
pub fn interp_o() -> InterpretationSpec {
    let mut predicates = BTreeMap::new();
    predicates.insert("=".to_string(), Template::new(["x0", "x1"], Formula::eq(vt("x0"), vt("x1"))));
    InterpretationSpec {
        name: "o".into(),
        source: Signature::arith_plus(),
        target: Signature::set(),
        domain: Template::new(["x"], omega_formula_on("x")),
        predicates,
        functions: ordinal_functions(),
        bound: BoundRule::Rebound {
            kind: BoundKind::In,
            rel: None,
        },
    }
}

/// `o` precomposed with `P`: a number is the set whose `P`-value it is.
pub fn interp_b() -> InterpretationSpec {
    let mut functions = BTreeMap::new();
    for (sym, t) in ordinal_functions() {
        let n = t.params.len() - 1;
        let mut ns = Names::new(t.params.iter().map(String::as_str));
        let us: Vec<String> = (0..n).map(|_| ns.fresh("u")).collect();
        let w = ns.fresh("w");
        let mut parts: Vec<Formula> = (0..n)
            .map(|i| p_graph_formula_on(&t.params[i], &us[i]))
            .collect();
        let mut inner: Vec<&str> = us.iter().map(String::as_str).collect();
        inner.push(&w);
        parts.push(t.on_vars(&inner));
        parts.push(p_graph_formula_on(&t.params[n], &w));
        let mut bound = us.clone();
        bound.push(w);
        functions.insert(sym, Template::new(t.params.clone(), Formula::exists_many(&bound, Formula::and_all(parts))));
    }
    let mut predicates = BTreeMap::new();
    predicates.insert("=".to_string(), Template::new(["x0", "x1"], Formula::eq(vt("x0"), vt("x1"))));
    InterpretationSpec {
        name: "b".into(),
        source: Signature::arith_plus(),
        target: Signature::set(),
        domain: Template::new(["x"], Formula::eq(vt("x"), vt("x"))),
        predicates,
        functions,
        bound: BoundRule::Through {
            graph: Template::new(["x", "y"], p_graph_formula_on("x", "y")),
        },
    }
}

pub fn by_name(name: &str, sig: &Signature) -> Option<InterpretationSpec> {
    match name {
        "a" => Some(interp_a()),
        "o" => Some(interp_o()),
        "b" => Some(interp_b()),
        "identity" | "1" => Some(InterpretationSpec::identity(sig)),
        _ => None,
    }
}

struct Translator<'s> {
    spec: &'s InterpretationSpec,
    names: Names,
}

impl Translator<'_> {
    fn dom(&self, x: &str) -> Formula {
        self.spec.domain.on_vars(&[x])
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula, InterpError> {
        Ok(match f {
            Formula::Atom(p, args) => {
                let t = self.spec.predicate(p)?.clone();
                self.unfold(args, &|_, vs| Ok(t.on_vars(vs)))?
            }
            Formula::Eq(a, b) => {
                let t = self.spec.predicate("=")?.clone();
                self.unfold(&[a.clone(), b.clone()], &|_, vs| Ok(t.on_vars(vs)))?
            }
            Formula::False => Formula::False,
            Formula::And(a, b) => Formula::and(self.formula(a)?, self.formula(b)?),
            Formula::Or(a, b) => Formula::or(self.formula(a)?, self.formula(b)?),
            Formula::Implies(a, b) => Formula::implies(self.formula(a)?, self.formula(b)?),
            Formula::Forall(x, body) => {
                Formula::forall(x.clone(), Formula::implies(self.dom(x), self.formula(body)?))
            }
            Formula::Exists(x, body) => {
                Formula::exists(x.clone(), Formula::and(self.dom(x), self.formula(body)?))
            }
            Formula::BForall(x, bd, body) | Formula::BExists(x, bd, body) => {
                let univ = matches!(f, Formula::BForall(..));
                let inner = self.formula(body)?;
                self.unfold(std::slice::from_ref(&bd.term), &|tr, vs| {
                    Ok(tr.bounded(x, vs[0], inner.clone(), univ))
                })?
            }
        })
    }

    /// Replaces the first non-variable argument `f(s⃗)` by a fresh `y`, under
    /// `∃x⃗ ∃y [⋀ (x_i = s_i) ∧ π_f(x⃗, y) ∧ ...]`, until all arguments are variables.
    #[allow(clippy::type_complexity)]
    fn unfold(
        &mut self,
        args: &[Term],
        finish: &dyn Fn(&mut Self, &[&str]) -> Result<Formula, InterpError>,
    ) -> Result<Formula, InterpError> {
        let Some(i) = args.iter().position(|t| !t.is_var()) else {
            let vs: Vec<&str> = args.iter().map(|t| t.as_var().unwrap()).collect();
            return finish(self, &vs);
        };
        let Term::App(sym, sub) = &args[i] else { unreachable!() };
        let graph = self.spec.function(sym)?.clone();
        let mut bound = Vec::new();
        let mut parts = Vec::new();
        let mut inputs = Vec::new();
        for s in sub {
            match s.as_var() {
                Some(v) => inputs.push(v.to_string()),
                None => {
                    let xi = self.names.fresh("x");
                    parts.push(self.formula(&Formula::eq(Term::var(&xi), s.clone()))?);
                    bound.push(xi.clone());
                    inputs.push(xi);
                }
            }
        }
        let y = self.names.fresh("y");
        bound.push(y.clone());
        let mut gargs: Vec<&str> = inputs.iter().map(String::as_str).collect();
        gargs.push(&y);
        parts.push(graph.on_vars(&gargs));
        let mut rest = args.to_vec();
        rest[i] = Term::var(&y);
        parts.push(self.unfold(&rest, finish)?);
        Ok(Formula::exists_many(&bound, Formula::and_all(parts)))
    }

    fn bounded(&mut self, x: &str, b: &str, body: Formula, univ: bool) -> Formula {
        let dom = self.dom(x);
        match &self.spec.bound {
            BoundRule::Rebound { kind, rel } => {
                let mut guards = vec![dom];
                if let Some(r) = rel {
                    guards.push(r.on_vars(&[x, b]));
                }
                if univ {
                    let g = guards.into_iter().rev().fold(body, |acc, g| Formula::implies(g, acc));
                    Formula::bforall(x, *kind, Term::var(b), g)
                } else {
                    guards.push(body);
                    Formula::bexists(x, *kind, Term::var(b), Formula::and_all(guards))
                }
            }
            BoundRule::Through { graph } => {
                let (t, xx) = (self.names.fresh("T"), self.names.fresh("X"));
                let inner = Formula::exists(
                    x,
                    Formula::and_all([dom, graph.on_vars(&[x, &xx]), body]),
                );
                let q = if univ {
                    Formula::all_in(xx, Term::var(&t), inner)
                } else {
                    Formula::some_in(xx, Term::var(&t), inner)
                };
                Formula::exists(t.clone(), Formula::and(graph.on_vars(&[b, &t]), q))
            }
            BoundRule::Relation { rel } => {
                let r = rel.on_vars(&[x, b]);
                if univ {
                    Formula::forall(x, Formula::implies(dom, Formula::implies(r, body)))
                } else {
                    Formula::exists(x, Formula::and_all([dom, r, body]))
                }
            }
        }
    }
}

/// The translation `φ ↦ φ^t`. Function applications are unfolded into graph conjunctions,
/// quantifiers are relativized to the domain formula, and a bounded quantifier is read as
/// a predicate of its bound term.
pub fn translate(spec: &InterpretationSpec, f: &Formula) -> Result<Formula, InterpError> {
    let mut tr = Translator {
        spec,
        names: Names::new(f.all_vars().iter().map(String::as_str)),
    };
    tr.formula(f)
}

/// Apply `inner`, then `outer`.
pub fn compose(
    outer: &InterpretationSpec,
    inner: &InterpretationSpec,
) -> Result<InterpretationSpec, InterpError> {
    if !inner.target.is_subsignature_of(&outer.source) {
        return Err(InterpError::Mismatch {
            outer: outer.name.clone(),
            inner: inner.name.clone(),
            target: inner.target.name.clone(),
            reads: outer.source.name.clone(),
        });
    }
    let lift = |t: &Template| -> Result<Template, InterpError> {
        Ok(Template::new(t.params.clone(), translate(outer, &t.body)?))
    };
    let x = &inner.domain.params[0];
    let domain = Template::new(
        [x.clone()],
        Formula::and(outer.domain.on_vars(&[x]), translate(outer, &inner.domain.body)?),
    );
    let predicates = inner
        .predicates
        .iter()
        .map(|(k, t)| Ok((k.clone(), lift(t)?)))
        .collect::<Result<_, InterpError>>()?;
    let functions = inner
        .functions
        .iter()
        .map(|(k, t)| Ok((k.clone(), lift(t)?)))
        .collect::<Result<_, InterpError>>()?;
    let rel = translate(outer, &inner.bound_relation("x", "b"))?;
    Ok(InterpretationSpec {
        name: format!("{}{}", outer.name, inner.name),
        source: inner.source.clone(),
        target: outer.target.clone(),
        domain,
        predicates,
        functions,
        bound: BoundRule::Relation {
            rel: Template::new(["x", "b"], rel),
        },
    })
}

/// Nonemptiness of the domain and, per function symbol, totality and uniqueness of its
/// graph on the domain.
pub fn obligations(spec: &InterpretationSpec) -> Vec<Obligation> {
    let dom = |v: &str| spec.domain.on_vars(&[v]);
    let mut out = vec![Obligation {
        label: "nonempty".into(),
        formula: Formula::exists("x", dom("x")),
    }];
    for (sym, t) in &spec.functions {
        let n = t.params.len() - 1;
        let mut ns = Names::new(t.body.all_vars().iter().map(String::as_str));
        let xs: Vec<String> = (0..n).map(|_| ns.fresh("x")).collect();
        let (y, y2) = (ns.fresh("y"), ns.fresh("y"));
        let with = |r: &str| {
            let mut a: Vec<&str> = xs.iter().map(String::as_str).collect();
            a.push(r);
            t.on_vars(&a)
        };
        let unique = Formula::forall(
            y2.clone(),
            Formula::implies(
                Formula::and(dom(&y2), with(&y2)),
                Formula::eq(Term::var(&y2), Term::var(&y)),
            ),
        );
        let body = Formula::exists(y.clone(), Formula::and_all([dom(&y), with(&y), unique]));
        let guarded = if xs.is_empty() {
            body
        } else {
            Formula::implies(Formula::and_all(xs.iter().map(|x| dom(x))), body)
        };
        out.push(Obligation {
            label: format!("functional {sym}"),
            formula: Formula::forall_many(&xs, guarded),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::classify;
    use crate::logic::{parse, print};

    #[test]
    fn identity_relativizes() {
        let sig = Signature::arith();
        let id = InterpretationSpec::identity(&sig);
        let f = parse("forall x. exists y. x = S(y)", &sig).unwrap();
        let g = translate(&id, &f).unwrap();
        assert_eq!(
            print(&g),
            "forall x. x = x -> exists y. y = y /\\ exists y_1. S(y) = y_1 /\\ x = y_1"
        );
    }

    #[test]
    fn a_membership_is_eps() {
        let a = interp_a();
        let f = parse("x in y", &Signature::set()).unwrap();
        let g = translate(&a, &f).unwrap();
        assert!(g.is_delta0());
        assert_eq!(
            print(&g),
            "exists r < exp(S(S(0)), x). exists m < S(y). y = (S(S(0)) * m + S(0)) * exp(S(S(0)), x) + r"
        );
        g.check(&Signature::arith_plus()).unwrap();
    }

    #[test]
    fn o_relativizes_to_omega() {
        let o = interp_o();
        let f = parse("forall x. x = x", &Signature::arith()).unwrap();
        let g = translate(&o, &f).unwrap();
        let expect = Formula::forall(
            "x",
            Formula::implies(omega_formula(), Formula::eq(vt("x"), vt("x"))),
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn free_variables_preserved() {
        let sig = Signature::arith_plus();
        for text in [
            "x + y = z",
            "exists y < x * x. S(y) = z",
            "forall u < exp(x, S(0)). u = u",
            "x * S(0) = exp(0, y)",
        ] {
            let f = parse(text, &sig).unwrap();
            for spec in [interp_o(), interp_b(), InterpretationSpec::identity(&sig)] {
                let g = translate(&spec, &f).unwrap();
                assert_eq!(g.free_vars(), f.free_vars(), "{text} under {}", spec.name);
                g.check(&spec.target).unwrap();
            }
        }
    }

    #[test]
    fn graph_templates_have_declared_parameters() {
        for spec in [interp_a(), interp_o(), interp_b()] {
            for t in spec.functions.values().chain(spec.predicates.values()) {
                let fv = t.body.free_vars();
                let ps = t.params.iter().cloned().collect();
                assert_eq!(fv, ps, "{}", spec.name);
            }
        }
        assert!(omega_formula().is_delta0());
        assert!(classify(&omega_formula()).e <= 1);
    }

    #[test]
    fn composition_signatures() {
        let ab = compose(&interp_a(), &interp_b()).unwrap();
        assert_eq!(ab.source.name, "arith+");
        assert_eq!(ab.target.name, "arith+");
        let ba = compose(&interp_b(), &interp_a()).unwrap();
        assert_eq!(ba.target.name, "set");
        assert!(compose(&interp_a(), &interp_a()).is_err());
    }

    #[test]
    fn obligation_shapes() {
        let obs = obligations(&interp_o());
        assert_eq!(obs.len(), 6);
        assert!(obs.iter().all(|o| o.formula.free_vars().is_empty()));
        assert_eq!(obligations(&interp_a()).len(), 1);
    }
}
