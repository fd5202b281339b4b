//! Three-valued evaluation over the standard model.
//!
//! Formulas are compiled to a negation-free tree with numbered variable slots. Nested
//! existential quantifiers and conjunctions collapse into one block, which is solved as a
//! constraint problem: a variable is taken from an equation, a membership or order guard,
//! or an oracle-backed graph when one of these pins it down, and only otherwise from the
//! budgeted range `[0, budget)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::logic::{BoundKind, Formula, Term};

use super::oracle::{self, match_template, registry, OracleKind, MEMBER_LIMIT};
use super::value::{arith, succ_num, Value};
use super::TruthValue;

/// Order guards wider than this are treated as unsearchable.
const RANGE_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to free variable {0}")]
    MissingAssignment(String),
    #[error("predicate {0:?} has no standard interpretation")]
    Unsupported(String),
}

#[derive(Debug, Clone)]
enum TermIr {
    Var(usize),
    Zero,
    Succ(Box<TermIr>),
    Op(&'static str, Box<TermIr>, Box<TermIr>),
}

#[derive(Debug, Clone)]
enum Ir {
    Const(bool),
    Eq(bool, TermIr, TermIr),
    In(bool, TermIr, TermIr),
    Lt(bool, TermIr, TermIr),
    And(Vec<Ir>),
    Or(Vec<Ir>),
    /// `∃` block, or its negation.
    Block(bool, Box<Block>),
    Oracle {
        pos: bool,
        kind: OracleKind,
        args: Vec<TermIr>,
        fallback: Box<Ir>,
    },
}

#[derive(Debug, Clone)]
struct BVar {
    slot: usize,
    guard: Option<(BoundKind, TermIr)>,
}

#[derive(Debug, Clone)]
enum Deriv {
    /// `with = other`, `with` containing the variable once under `S`, `+`, `*`.
    Linear { with: TermIr, other: TermIr },
    Member(TermIr),
    Below(TermIr),
    Oracle {
        kind: OracleKind,
        args: Vec<TermIr>,
        at: usize,
    },
}

#[derive(Debug, Clone)]
struct Block {
    vars: Vec<BVar>,
    conj: Vec<Ir>,
    /// Block-local variable indices each conjunct mentions.
    deps: Vec<Vec<usize>>,
    /// Conjuncts mentioning each local variable.
    users: Vec<Vec<usize>>,
    /// Per local variable: derivations and the slots they read.
    derivs: Vec<Vec<(Deriv, Vec<usize>)>>,
}

/// A formula prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Compiled {
    ir: Ir,
    slots: usize,
    free: Vec<String>,
}

impl Compiled {
    /// `free` fixes the order of the arguments to [`Compiled::eval`]; it must cover the
    /// formula's free variables.
    pub fn new(f: &Formula, free: &[&str], oracle: bool) -> Result<Self, EvalError> {
        let mut sizes = HashMap::new();
        if oracle {
            fill_sizes(f, &mut sizes);
        }
        let mut c = Compiler {
            oracle,
            scopes: free.iter().enumerate().map(|(i, v)| (v.to_string(), i)).collect(),
            slots: free.len(),
            sizes,
        };
        let ir = c.compile(f, true)?;
        Ok(Compiled {
            ir,
            slots: c.slots,
            free: free.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// An indented rendering of the compiled form, oracle-decided parts collapsed.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        outline(&self.ir, 0, &mut out);
        out
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    pub fn eval(&self, args: &[Value], budget: u64) -> TruthValue {
        assert_eq!(args.len(), self.free.len(), "argument count");
        let mut env: Vec<Option<Value>> = vec![None; self.slots];
        for (i, a) in args.iter().enumerate() {
            env[i] = Some(a.clone());
        }
        let mut ev = Evaluator { env, budget };
        ev.eval(&self.ir)
    }
}

pub(crate) fn eval_with(
    f: &Formula,
    env: &BTreeMap<String, Value>,
    budget: u64,
    oracle: bool,
) -> Result<TruthValue, EvalError> {
    let free = f.free_vars();
    let names: Vec<&str> = free.iter().map(String::as_str).collect();
    let mut args = Vec::with_capacity(names.len());
    for n in &names {
        args.push(
            env.get(*n)
                .cloned()
                .ok_or_else(|| EvalError::MissingAssignment(n.to_string()))?,
        );
    }
    Ok(Compiled::new(f, &names, oracle)?.eval(&args, budget))
}

fn outline_term(t: &TermIr) -> String {
    match t {
        TermIr::Var(s) => format!("${s}"),
        TermIr::Zero => "0".into(),
        TermIr::Succ(a) => format!("S({})", outline_term(a)),
        TermIr::Op(op, a, b) => format!("({} {op} {})", outline_term(a), outline_term(b)),
    }
}

fn outline(ir: &Ir, depth: usize, out: &mut String) {
    use std::fmt::Write;
    let pad = "  ".repeat(depth);
    let sign = |p: bool| if p { "" } else { "~" };
    match ir {
        Ir::Const(b) => writeln!(out, "{pad}{b}"),
        Ir::Eq(p, a, b) => writeln!(out, "{pad}{}{} = {}", sign(*p), outline_term(a), outline_term(b)),
        Ir::In(p, a, b) => writeln!(out, "{pad}{}{} in {}", sign(*p), outline_term(a), outline_term(b)),
        Ir::Lt(p, a, b) => writeln!(out, "{pad}{}{} < {}", sign(*p), outline_term(a), outline_term(b)),
        Ir::And(v) | Ir::Or(v) => {
            let _ = writeln!(out, "{pad}{}", if matches!(ir, Ir::And(_)) { "and" } else { "or" });
            v.iter().for_each(|i| outline(i, depth + 1, out));
            Ok(())
        }
        Ir::Block(neg, b) => {
            let vars: Vec<String> = b.vars.iter().map(|v| format!("${}", v.slot)).collect();
            let _ = writeln!(out, "{pad}{}exists {}", sign(!*neg), vars.join(" "));
            b.conj.iter().for_each(|i| outline(i, depth + 1, out));
            Ok(())
        }
        Ir::Oracle { pos, kind, args, .. } => {
            let a: Vec<String> = args.iter().map(outline_term).collect();
            writeln!(out, "{pad}{}{kind:?}({})", sign(*pos), a.join(", "))
        }
    }
    .unwrap();
}

fn fill_sizes(f: &Formula, out: &mut HashMap<*const Formula, usize>) -> usize {
    let n = match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::False => 1,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            1 + fill_sizes(a, out) + fill_sizes(b, out)
        }
        Formula::Forall(_, b)
        | Formula::Exists(_, b)
        | Formula::BForall(_, _, b)
        | Formula::BExists(_, _, b) => 1 + fill_sizes(b, out),
    };
    out.insert(f as *const Formula, n);
    n
}

struct Compiler {
    oracle: bool,
    scopes: Vec<(String, usize)>,
    slots: usize,
    sizes: HashMap<*const Formula, usize>,
}

impl Compiler {
    fn term(&self, t: &Term) -> Result<TermIr, EvalError> {
        Ok(match t {
            Term::Var(v) => match self.scopes.iter().rev().find(|(n, _)| n == v) {
                Some((_, s)) => TermIr::Var(*s),
                None => return Err(EvalError::MissingAssignment(v.clone())),
            },
            Term::App(f, args) => match (f.as_str(), args.as_slice()) {
                ("0", []) => TermIr::Zero,
                ("S", [a]) => TermIr::Succ(Box::new(self.term(a)?)),
                ("+", [a, b]) | ("*", [a, b]) | ("exp", [a, b]) => {
                    let op = match f.as_str() {
                        "+" => "+",
                        "*" => "*",
                        _ => "exp",
                    };
                    TermIr::Op(op, Box::new(self.term(a)?), Box::new(self.term(b)?))
                }
                _ => return Err(EvalError::Unsupported(f.clone())),
            },
        })
    }

    fn template(&self, f: &Formula) -> Option<(OracleKind, Vec<Term>)> {
        let size = *self.sizes.get(&(f as *const Formula))?;
        registry()
            .iter()
            .filter(|e| e.size == size)
            .find_map(|e| match_template(&e.template, f).map(|args| (e.kind, args)))
    }

    fn compile(&mut self, f: &Formula, pos: bool) -> Result<Ir, EvalError> {
        if self.oracle && !matches!(f, Formula::Atom(..) | Formula::Eq(..) | Formula::False) {
            if let Some((kind, args)) = self.template(f) {
                let args = args.iter().map(|t| self.term(t)).collect::<Result<_, _>>()?;
                let fallback = Box::new(self.compile_node(f, pos)?);
                return Ok(Ir::Oracle {
                    pos,
                    kind,
                    args,
                    fallback,
                });
            }
        }
        self.compile_node(f, pos)
    }

    fn compile_node(&mut self, f: &Formula, pos: bool) -> Result<Ir, EvalError> {
        Ok(match f {
            Formula::Atom(p, ts) if p == "in" && ts.len() == 2 => {
                Ir::In(pos, self.term(&ts[0])?, self.term(&ts[1])?)
            }
            Formula::Atom(p, _) => return Err(EvalError::Unsupported(p.clone())),
            Formula::Eq(a, b) => Ir::Eq(pos, self.term(a)?, self.term(b)?),
            Formula::False => Ir::Const(!pos),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (a, b) = (self.compile(a, pos)?, self.compile(b, pos)?);
                if matches!(f, Formula::And(..)) == pos {
                    conj(vec![a, b])
                } else {
                    disj(vec![a, b])
                }
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.compile(a, !pos)?, self.compile(b, pos)?);
                if pos {
                    disj(vec![a, b])
                } else {
                    conj(vec![a, b])
                }
            }
            Formula::Exists(x, body) | Formula::BExists(x, _, body) => {
                let guard = match f {
                    Formula::BExists(_, bd, _) => Some((bd.kind, self.term(&bd.term)?)),
                    _ => None,
                };
                Ir::Block(!pos, Box::new(self.block(x, guard, body, true)?))
            }
            Formula::Forall(x, body) | Formula::BForall(x, _, body) => {
                let guard = match f {
                    Formula::BForall(_, bd, _) => Some((bd.kind, self.term(&bd.term)?)),
                    _ => None,
                };
                Ir::Block(pos, Box::new(self.block(x, guard, body, false)?))
            }
        })
    }

    fn block(
        &mut self,
        x: &str,
        guard: Option<(BoundKind, TermIr)>,
        body: &Formula,
        body_pos: bool,
    ) -> Result<Block, EvalError> {
        let slot = self.slots;
        self.slots += 1;
        self.scopes.push((x.to_string(), slot));
        let inner = self.compile(body, body_pos);
        self.scopes.pop();
        let mut parts = Vec::new();
        match &guard {
            Some((BoundKind::In, t)) => parts.push(Ir::In(true, TermIr::Var(slot), t.clone())),
            Some((BoundKind::Lt, t)) => parts.push(Ir::Lt(true, TermIr::Var(slot), t.clone())),
            None => {}
        }
        let mut vars = vec![BVar { slot, guard }];
        absorb(inner?, &mut vars, &mut parts);
        Ok(build_block(vars, parts))
    }
}

fn conj(items: Vec<Ir>) -> Ir {
    let mut out = Vec::new();
    for i in items {
        match i {
            Ir::And(v) => out.extend(v),
            Ir::Const(true) => {}
            other => out.push(other),
        }
    }
    if out.is_empty() {
        Ir::Const(true)
    } else if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Ir::And(out)
    }
}

fn disj(items: Vec<Ir>) -> Ir {
    let mut out = Vec::new();
    for i in items {
        match i {
            Ir::Or(v) => out.extend(v),
            Ir::Const(false) => {}
            other => out.push(other),
        }
    }
    if out.is_empty() {
        Ir::Const(false)
    } else if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Ir::Or(out)
    }
}

/// Splits a block body into conjuncts, merging directly nested existential blocks.
fn absorb(ir: Ir, vars: &mut Vec<BVar>, parts: &mut Vec<Ir>) {
    match ir {
        Ir::And(v) => v.into_iter().for_each(|i| absorb(i, vars, parts)),
        Ir::Const(true) => {}
        Ir::Block(false, b) => {
            let b = *b;
            vars.extend(b.vars);
            parts.extend(b.conj);
        }
        other => parts.push(other),
    }
}

fn term_slots(t: &TermIr, out: &mut Vec<usize>) {
    match t {
        TermIr::Var(s) => out.push(*s),
        TermIr::Zero => {}
        TermIr::Succ(a) => term_slots(a, out),
        TermIr::Op(_, a, b) => {
            term_slots(a, out);
            term_slots(b, out);
        }
    }
}

fn ir_slots(ir: &Ir, out: &mut Vec<usize>) {
    match ir {
        Ir::Const(_) => {}
        Ir::Eq(_, a, b) | Ir::In(_, a, b) | Ir::Lt(_, a, b) => {
            term_slots(a, out);
            term_slots(b, out);
        }
        Ir::And(v) | Ir::Or(v) => v.iter().for_each(|i| ir_slots(i, out)),
        Ir::Block(_, b) => {
            for v in &b.vars {
                if let Some((_, t)) = &v.guard {
                    term_slots(t, out);
                }
            }
            b.conj.iter().for_each(|i| ir_slots(i, out));
        }
        Ir::Oracle { args, fallback, .. } => {
            args.iter().for_each(|t| term_slots(t, out));
            ir_slots(fallback, out);
        }
    }
}

fn count_slot(t: &TermIr, s: usize) -> usize {
    let mut v = Vec::new();
    term_slots(t, &mut v);
    v.iter().filter(|&&x| x == s).count()
}

/// Whether `s` sits in `t` under `S`, `+` and `*` only.
fn invertible(t: &TermIr, s: usize) -> bool {
    match t {
        TermIr::Var(x) => *x == s,
        TermIr::Zero => false,
        TermIr::Succ(a) => invertible(a, s),
        TermIr::Op("exp", ..) => false,
        TermIr::Op(_, a, b) => {
            if count_slot(a, s) > 0 {
                invertible(a, s)
            } else {
                invertible(b, s)
            }
        }
    }
}

fn build_block(vars: Vec<BVar>, conj: Vec<Ir>) -> Block {
    let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, v)| (v.slot, i)).collect();
    let mut deps = Vec::with_capacity(conj.len());
    let mut users = vec![Vec::new(); vars.len()];
    for (ci, c) in conj.iter().enumerate() {
        let mut s = Vec::new();
        ir_slots(c, &mut s);
        let mut d: Vec<usize> = s.iter().filter_map(|x| local.get(x).copied()).collect();
        d.sort_unstable();
        d.dedup();
        for &i in &d {
            users[i].push(ci);
        }
        deps.push(d);
    }
    let mut derivs: Vec<Vec<(Deriv, Vec<usize>)>> = vec![Vec::new(); vars.len()];
    let reads = |ts: &[&TermIr], except: usize| {
        let mut s = Vec::new();
        ts.iter().for_each(|t| term_slots(t, &mut s));
        s.retain(|&x| x != except);
        s.sort_unstable();
        s.dedup();
        s
    };
    for c in &conj {
        match c {
            Ir::Eq(true, a, b) => {
                for (i, v) in vars.iter().enumerate() {
                    let (na, nb) = (count_slot(a, v.slot), count_slot(b, v.slot));
                    let (with, other) = match (na, nb) {
                        (1, 0) => (a, b),
                        (0, 1) => (b, a),
                        _ => continue,
                    };
                    if invertible(with, v.slot) {
                        let d = Deriv::Linear {
                            with: with.clone(),
                            other: other.clone(),
                        };
                        derivs[i].push((d, reads(&[a, b], v.slot)));
                    }
                }
            }
            Ir::In(true, TermIr::Var(s), t) => {
                if let Some(&i) = local.get(s) {
                    if count_slot(t, *s) == 0 {
                        derivs[i].push((Deriv::Member(t.clone()), reads(&[t], *s)));
                    }
                }
            }
            Ir::Oracle {
                pos: true,
                kind,
                args,
                ..
            } => {
                for (at, a) in args.iter().enumerate() {
                    let TermIr::Var(s) = a else { continue };
                    let Some(&i) = local.get(s) else { continue };
                    if args.iter().map(|t| count_slot(t, *s)).sum::<usize>() != 1 {
                        continue;
                    }
                    let all: Vec<&TermIr> = args.iter().collect();
                    let d = Deriv::Oracle {
                        kind: *kind,
                        args: args.clone(),
                        at,
                    };
                    derivs[i].push((d, reads(&all, *s)));
                }
            }
            _ => {}
        }
    }
    for (i, v) in vars.iter().enumerate() {
        if let Some((BoundKind::Lt, t)) = &v.guard {
            derivs[i].push((Deriv::Below(t.clone()), reads(&[t], v.slot)));
        }
    }
    Block {
        vars,
        conj,
        deps,
        users,
        derivs,
    }
}

enum Cands {
    List(Vec<Value>),
    Below(u128),
    Numerals(u128),
    /// Members of a code, listed only once chosen.
    Bits(Value),
}

impl Cands {
    fn len(&self) -> u128 {
        match self {
            Cands::List(v) => v.len() as u128,
            Cands::Below(n) | Cands::Numerals(n) => *n,
            Cands::Bits(v) => v.cardinality(),
        }
    }

    fn force(self) -> Self {
        match self {
            Cands::Bits(v) => Cands::List(v.members()),
            c => c,
        }
    }

    fn get(&self, i: u128) -> Value {
        match self {
            Cands::List(v) => v[i as usize].clone(),
            Cands::Below(_) => Value::Code(BigUint::from(i)),
            Cands::Numerals(_) => Value::numeral(i),
            Cands::Bits(_) => unreachable!("forced before use"),
        }
    }
}

struct Evaluator {
    env: Vec<Option<Value>>,
    budget: u64,
}

impl Evaluator {
    fn term(&self, t: &TermIr) -> Option<Value> {
        match t {
            TermIr::Var(s) => Some(self.env[*s].clone().expect("assigned slot")),
            TermIr::Zero => Some(Value::zero()),
            TermIr::Succ(a) => succ_num(&self.term(a)?),
            TermIr::Op(op, a, b) => arith(op, &self.term(a)?, &self.term(b)?),
        }
    }

    fn eval(&mut self, ir: &Ir) -> TruthValue {
        use TruthValue::*;
        match ir {
            Ir::Const(b) => TruthValue::from(*b),
            Ir::Eq(pos, a, b) => match (self.term(a), self.term(b)) {
                (Some(x), Some(y)) => TruthValue::from((x == y) == *pos),
                _ => Unknown,
            },
            Ir::In(pos, a, b) => match (self.term(a), self.term(b)) {
                (Some(x), Some(y)) => TruthValue::from(y.contains(&x) == *pos),
                _ => Unknown,
            },
            Ir::Lt(pos, a, b) => match (self.term(a), self.term(b)) {
                (Some(Value::Code(x)), Some(Value::Code(y))) => TruthValue::from((x < y) == *pos),
                _ => Unknown,
            },
            Ir::And(v) => {
                let mut acc = True;
                for i in v {
                    match self.eval(i) {
                        False => return False,
                        Unknown => acc = Unknown,
                        True => {}
                    }
                }
                acc
            }
            Ir::Or(v) => {
                let mut acc = False;
                for i in v {
                    match self.eval(i) {
                        True => return True,
                        Unknown => acc = Unknown,
                        False => {}
                    }
                }
                acc
            }
            Ir::Block(neg, b) => {
                let r = self.block(b);
                if *neg {
                    r.not()
                } else {
                    r
                }
            }
            Ir::Oracle {
                pos,
                kind,
                args,
                fallback,
            } => {
                let vals: Option<Vec<Value>> = args.iter().map(|t| self.term(t)).collect();
                match vals.and_then(|v| oracle::check(*kind, &v)) {
                    Some(b) => TruthValue::from(b == *pos),
                    None => self.eval(fallback),
                }
            }
        }
    }

    fn block(&mut self, b: &Block) -> TruthValue {
        let mut remaining: Vec<usize> = b.deps.iter().map(Vec::len).collect();
        let mut unknown = false;
        for (ci, c) in b.conj.iter().enumerate() {
            if remaining[ci] == 0 {
                match self.eval(c) {
                    TruthValue::False => return TruthValue::False,
                    TruthValue::Unknown => unknown = true,
                    TruthValue::True => {}
                }
            }
        }
        let mut assigned = vec![false; b.vars.len()];
        self.search(b, &mut remaining, &mut assigned, 0, unknown)
    }

    fn candidates(&self, d: &Deriv) -> Option<Cands> {
        match d {
            Deriv::Linear { with, other } => {
                let target = self.term(other)?;
                invert(self, with, target).map(Cands::List)
            }
            Deriv::Below(t) => {
                let n = self.term(t)?.as_code()?.to_u128()?;
                (n <= RANGE_LIMIT).then_some(Cands::Below(n))
            }
            Deriv::Member(t) => {
                match self.term(t)? {
                    Value::Vn(n) => Some(Cands::Numerals(n)),
                    s => (s.cardinality() <= MEMBER_LIMIT).then_some(Cands::Bits(s)),
                }
            }
            Deriv::Oracle { kind, args, at } => {
                let vals: Vec<Option<Value>> = args
                    .iter()
                    .enumerate()
                    .map(|(i, t)| if i == *at { None } else { self.term(t) })
                    .collect();
                if vals.iter().enumerate().any(|(i, v)| i != *at && v.is_none()) {
                    return None;
                }
                oracle::solve(*kind, &vals, *at).map(Cands::List)
            }
        }
    }

    /// The next variable and its candidates; `exhaustive` is false for budget ranges.
    fn choose(&self, b: &Block, assigned: &[bool]) -> Option<(usize, Cands, bool)> {
        let mut best: Option<(usize, Cands)> = None;
        for (i, ds) in b.derivs.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            for (d, reads) in ds {
                if reads.iter().any(|&s| self.env[s].is_none()) {
                    continue;
                }
                let Some(c) = self.candidates(d) else { continue };
                let better = best.as_ref().is_none_or(|(_, bc)| c.len() < bc.len());
                if better {
                    let done = c.len() <= 1;
                    best = Some((i, c));
                    if done {
                        let (i, c) = best.unwrap();
                        return Some((i, c, true));
                    }
                }
            }
        }
        if let Some((i, c)) = best {
            return Some((i, c, true));
        }
        let i = (0..b.vars.len()).find(|&i| !assigned[i])?;
        if b.vars[i].guard.is_some() {
            return None;
        }
        Some((i, Cands::Below(self.budget as u128), false))
    }

    fn search(
        &mut self,
        b: &Block,
        remaining: &mut [usize],
        assigned: &mut [bool],
        depth: usize,
        unknown: bool,
    ) -> TruthValue {
        if depth == b.vars.len() {
            return if unknown {
                TruthValue::Unknown
            } else {
                TruthValue::True
            };
        }
        let Some((i, cands, exhaustive)) = self.choose(b, assigned) else {
            return TruthValue::Unknown;
        };
        let cands = cands.force();
        let slot = b.vars[i].slot;
        let mut any_unknown = !exhaustive;
        assigned[i] = true;
        for k in 0..cands.len() {
            self.env[slot] = Some(cands.get(k));
            let mut failed = false;
            let mut unk = unknown;
            for &ci in &b.users[i] {
                remaining[ci] -= 1;
            }
            for &ci in &b.users[i] {
                if remaining[ci] == 0 && !failed {
                    match self.eval(&b.conj[ci]) {
                        TruthValue::False => failed = true,
                        TruthValue::Unknown => unk = true,
                        TruthValue::True => {}
                    }
                }
            }
            let r = if failed {
                TruthValue::False
            } else {
                self.search(b, remaining, assigned, depth + 1, unk)
            };
            for &ci in &b.users[i] {
                remaining[ci] += 1;
            }
            match r {
                TruthValue::True => {
                    self.env[slot] = None;
                    assigned[i] = false;
                    return TruthValue::True;
                }
                TruthValue::Unknown => any_unknown = true,
                TruthValue::False => {}
            }
        }
        self.env[slot] = None;
        assigned[i] = false;
        if any_unknown {
            TruthValue::Unknown
        } else {
            TruthValue::False
        }
    }
}

/// Values of the variable in `with` making `with = target`.
fn invert(ev: &Evaluator, with: &TermIr, target: Value) -> Option<Vec<Value>> {
    let slot_free = |t: &TermIr| {
        let mut s = Vec::new();
        term_slots(t, &mut s);
        s.iter().all(|&x| ev.env[x].is_some())
    };
    match with {
        TermIr::Var(_) => Some(vec![target]),
        TermIr::Succ(a) => {
            let n = target.as_code()?;
            if n.is_zero() {
                Some(vec![])
            } else {
                invert(ev, a, Value::Code(n - 1u32))
            }
        }
        TermIr::Op(op, a, b) => {
            let (var_side, known) = if slot_free(a) { (b, a) } else { (a, b) };
            let k = ev.term(known)?;
            let (n, k) = (target.as_code()?, k.as_code()?);
            match *op {
                "+" => {
                    if n < k {
                        Some(vec![])
                    } else {
                        invert(ev, var_side, Value::Code(n - k))
                    }
                }
                "*" => {
                    if k.is_zero() {
                        if n.is_zero() {
                            None
                        } else {
                            Some(vec![])
                        }
                    } else if (n % k).is_zero() {
                        invert(ev, var_side, Value::Code(n / k))
                    } else {
                        Some(vec![])
                    }
                }
                _ => None,
            }
        }
        TermIr::Zero => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, Signature};

    fn ev(text: &str, sig: &Signature, env: &[(&str, u64)], budget: u64) -> TruthValue {
        let f = parse(text, sig).unwrap();
        let env = env.iter().map(|(k, v)| (k.to_string(), Value::num(*v))).collect();
        eval_with(&f, &env, budget, false).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = Signature::arith();
        assert_eq!(ev("S(0) + S(0) = S(S(0))", &a, &[], 4), TruthValue::True);
        assert_eq!(ev("exists y. x = S(y)", &a, &[("x", 0)], 16), TruthValue::False);
        assert_eq!(ev("forall x < S(S(0)). x = x", &a, &[], 0), TruthValue::True);
        assert_eq!(ev("exists y. y * y = x", &a, &[("x", 49)], 0), TruthValue::Unknown);
        assert_eq!(ev("exists y. y * y = x", &a, &[("x", 49)], 8), TruthValue::True);
        assert_eq!(ev("exists y. x + y = S(S(0))", &a, &[("x", 5)], 0), TruthValue::False);
        assert_eq!(ev("forall y. ~S(y) = 0", &a, &[], 32), TruthValue::True);
        assert_eq!(ev("forall y. ~y = S(y)", &a, &[], 32), TruthValue::Unknown);
        assert_eq!(ev("forall y. y = x", &a, &[("x", 0)], 32), TruthValue::False);
    }

    #[test]
    fn set_examples() {
        let s = Signature::set();
        assert_eq!(ev("x in y", &s, &[("x", 1), ("y", 3)], 0), TruthValue::True);
        assert_eq!(ev("exists z. x in z", &s, &[("x", 0)], 2), TruthValue::True);
        assert_eq!(ev("exists z. x in z", &s, &[("x", 5)], 8), TruthValue::Unknown);
        assert_eq!(
            ev("forall z in x. z in y", &s, &[("x", 3), ("y", 11)], 0),
            TruthValue::True
        );
        assert_eq!(
            ev("exists z in y. exists w in z. w = x /\\ ~z = x", &s, &[("x", 0), ("y", 11)], 0),
            TruthValue::True
        );
    }

    #[test]
    fn nested_blocks_are_merged() {
        let a = Signature::arith();
        let f = parse("exists u. exists v. u + v = x /\\ u = S(v)", &a).unwrap();
        let c = Compiled::new(&f, &["x"], false).unwrap();
        let Ir::Block(false, b) = &c.ir else { panic!() };
        assert_eq!(b.vars.len(), 2);
        assert_eq!(c.eval(&[Value::num(7)], 0), TruthValue::Unknown);
        assert_eq!(c.eval(&[Value::num(7)], 8), TruthValue::True);
    }
}
