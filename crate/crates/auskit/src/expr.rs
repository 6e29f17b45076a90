//! A small expression language for modules and morphisms over a fixed
//! algebra, plus a namer that writes modules back in terms of known names.
//!
//! ```text
//! program := ('let' NAME '=' expr ';')* expr
//! expr    := term ('++' term)*
//! term    := post ('^' INT)?
//! post    := atom ('[' INT ']')*
//! atom    := '0' | NAME '(' args ')' | NAME | '(' expr ')'
//! ```
//!
//! Module functions: `P(v) Q(v) S(v) kP(i) kQ(j) kR(point, t) tau(M)
//! taum(M) rad(M) soc(M) top(M) cut(M, k) modsoc(M) ker(f) coker(f) im(f)
//! src(f) dst(f)`; `L` is the regular module. Morphisms: `hom(X, Y)[k]
//! projcover(M) soclein(M) radin(M) arsplit(M) comp(f, g) row(f, ...) add(f,
//! g) id(M) zero(X, Y)`.

use crate::algebra::Algebra;
use crate::ar::{min_right_almost_split, proj_cover, tau, tau_minus};
use crate::endo::{decompose, indecomposables_isomorphic, is_indecomposable};
use crate::kronecker::{self, KroneckerPoint};
use crate::rep::{self, hom_space, Morphism, Rep};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Value {
    Module(Rep),
    Map(Morphism),
    /// A basis of `Hom(X, Y)`, waiting for an index.
    Homs(Vec<Morphism>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Module(_) => "a module",
            Value::Map(_) => "a morphism",
            Value::Homs(_) => "a Hom basis",
        }
    }
}

/// Named values over one algebra, in binding order.
#[derive(Clone, Debug)]
pub struct Env {
    alg: Algebra,
    vars: Vec<(String, Value)>,
}

impl Env {
    pub fn new(alg: &Algebra) -> Env {
        Env { alg: alg.clone(), vars: Vec::new() }
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    /// Bind or rebind `name`.
    pub fn bind(&mut self, name: &str, v: Value) {
        if let Some(slot) = self.vars.iter_mut().find(|(n, _)| n == name) {
            slot.1 = v;
        } else {
            self.vars.push((name.to_string(), v));
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.vars.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// Named modules in binding order.
    pub fn modules(&self) -> Vec<(String, Rep)> {
        self.vars
            .iter()
            .filter_map(|(n, v)| match v {
                Value::Module(m) => Some((n.clone(), m.clone())),
                _ => None,
            })
            .collect()
    }

    /// Evaluate a program; `let` bindings persist in `self`.
    pub fn run(&mut self, src: &str) -> Result<Value> {
        let mut p = Parser { s: src.chars().collect(), i: 0 };
        loop {
            p.ws();
            let save = p.i;
            if p.ident().as_deref() == Some("let") {
                p.ws();
                let col = p.i;
                let name = p.ident().ok_or_else(|| p.err(col, "expected a name after `let`"))?;
                p.expect('=')?;
                let v = p.expr(self)?;
                p.expect(';')?;
                self.bind(&name, v);
            } else {
                p.i = save;
                break;
            }
        }
        let v = p.expr(self)?;
        p.ws();
        if p.i < p.s.len() {
            return Err(p.err(p.i, "unexpected trailing input"));
        }
        Ok(v)
    }

    pub fn eval(&self, src: &str) -> Result<Value> {
        self.clone().run(src)
    }

    pub fn module(&self, src: &str) -> Result<Rep> {
        match self.eval(src)? {
            Value::Module(m) => Ok(m),
            v => Err(Error::Invalid(format!("`{src}` is {}, not a module", v.kind()))),
        }
    }

    pub fn morphism(&self, src: &str) -> Result<Morphism> {
        match self.eval(src)? {
            Value::Map(f) => Ok(f),
            v => Err(Error::Invalid(format!("`{src}` is {}, not a morphism", v.kind()))),
        }
    }

    /// Bind `NAME = expr`.
    pub fn define(&mut self, name: &str, src: &str) -> Result<()> {
        let v = self.eval(src)?;
        self.bind(name, v);
        Ok(())
    }

    /// Name of an indecomposable module: a bound name, then `P/Q/S` of a
    /// vertex, then the Kronecker name, then its dimension vector.
    pub fn name_indecomposable(&self, m: &Rep) -> String {
        for (n, r) in self.modules() {
            if r.dims() == m.dims() && is_indecomposable(&r) && indecomposables_isomorphic(&r, m) {
                return n;
            }
        }
        let alg = &self.alg;
        for x in 0..alg.n_vertices() {
            let v = alg.vertex_name(x);
            for (tag, r) in [("P", alg.projective(x)), ("Q", alg.injective(x)), ("S", alg.simple(x))] {
                if r.dims() == m.dims() && indecomposables_isomorphic(&r, m) {
                    return format!("{tag}({v})");
                }
            }
        }
        if kronecker::is_kronecker(alg) {
            if let Ok(n) = kronecker::name(m) {
                return n;
            }
        }
        let d: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
        format!("M[{}]", d.join(","))
    }

    /// `A ++ B^2 ++ ...`, summands sorted by name; `0` for the zero module.
    pub fn name(&self, m: &Rep) -> String {
        if m.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = decompose(m)
            .with_multiplicity()
            .into_iter()
            .map(|(r, k)| {
                let n = self.name_indecomposable(&r);
                if k > 1 {
                    format!("{n}^{k}")
                } else {
                    n
                }
            })
            .collect();
        parts.sort();
        parts.join(" ++ ")
    }
}

/// Embed a Kronecker module into an algebra with vertices `a`, `b` and
/// arrows `alpha, beta: b → a`; every other space is zero.
pub fn embed_kronecker(alg: &Algebra, m: &Rep) -> Result<Rep> {
    let a = alg.vertex("a")?;
    let b = alg.vertex("b")?;
    let q = alg.quiver();
    let find = |n: &str| q.arrow(n).ok_or_else(|| Error::Unknown(n.to_string()));
    let (al, be) = (find("alpha")?, find("beta")?);
    for x in [al, be] {
        if alg.arrow(x).src != b || alg.arrow(x).dst != a {
            return Err(Error::Invalid("alpha and beta must both go from b to a".into()));
        }
    }
    let p = alg.p();
    let mut dims = vec![0; alg.n_vertices()];
    dims[a] = m.dims()[0];
    dims[b] = m.dims()[1];
    let maps = (0..alg.n_arrows())
        .map(|x| {
            let ar = alg.arrow(x);
            if x == al {
                m.map(0).clone()
            } else if x == be {
                m.map(1).clone()
            } else {
                crate::ffmat::Mat::zeros(p, dims[ar.dst], dims[ar.src])
            }
        })
        .collect();
    Rep::new(alg.clone(), dims, maps)
}

struct Parser {
    s: Vec<char>,
    i: usize,
}

enum Arg {
    Val(Value),
    Int(usize),
    Raw(String),
}

impl Parser {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, col: at + 1, msg: msg.into() }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(self.i, format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let start = self.i;
        if !self.s.get(start).is_some_and(|c| c.is_alphabetic() || *c == '_') {
            return None;
        }
        while self.s.get(self.i).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '\'') {
            self.i += 1;
        }
        Some(self.s[start..self.i].iter().collect())
    }

    fn int(&mut self) -> Result<usize> {
        self.ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| self.err(start, "expected a number"))
    }

    fn expr(&mut self, env: &Env) -> Result<Value> {
        let start = self.peek_pos();
        let mut acc = vec![self.term(env)?];
        while self.peek() == Some('+') && self.s.get(self.i + 1) == Some(&'+') {
            self.i += 2;
            acc.push(self.term(env)?);
        }
        if acc.len() == 1 {
            return Ok(acc.pop().unwrap());
        }
        let mods = acc.into_iter().map(|v| as_module(v, self, start)).collect::<Result<Vec<_>>>()?;
        Ok(Value::Module(Rep::direct_sum_all(env.alg(), &mods)))
    }

    fn peek_pos(&mut self) -> usize {
        self.ws();
        self.i
    }

    fn term(&mut self, env: &Env) -> Result<Value> {
        let start = self.peek_pos();
        let v = self.post(env)?;
        if self.eat('^') {
            let n = self.int()?;
            let m = as_module(v, self, start)?;
            return Ok(Value::Module(m.power(n)));
        }
        Ok(v)
    }

    fn post(&mut self, env: &Env) -> Result<Value> {
        let start = self.peek_pos();
        let mut v = self.atom(env)?;
        while self.eat('[') {
            let at = self.peek_pos();
            let k = self.int()?;
            self.expect(']')?;
            v = match v {
                Value::Homs(b) => {
                    let n = b.len();
                    Value::Map(b.into_iter().nth(k).ok_or_else(|| {
                        self.err(at, format!("index {k} out of range: Hom has dimension {n}"))
                    })?)
                }
                _ => return Err(self.err(start, "only hom(X, Y) can be indexed")),
            };
        }
        Ok(v)
    }

    fn atom(&mut self, env: &Env) -> Result<Value> {
        let start = self.peek_pos();
        if self.eat('(') {
            let v = self.expr(env)?;
            self.expect(')')?;
            return Ok(v);
        }
        if self.peek() == Some('0') {
            self.i += 1;
            return Ok(Value::Module(Rep::zero(env.alg())));
        }
        let Some(name) = self.ident() else {
            return Err(self.err(start, "expected a module or morphism"));
        };
        if self.peek() != Some('(') {
            if let Some(v) = env.get(&name) {
                return Ok(v.clone());
            }
            if name == "L" {
                return Ok(Value::Module(env.alg().regular()));
            }
            return Err(Error::Unknown(name));
        }
        self.i += 1;
        let args = self.args(env, &name)?;
        self.call(env, &name, args, start)
    }

    fn args(&mut self, env: &Env, f: &str) -> Result<Vec<(usize, Arg)>> {
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            let at = self.peek_pos();
            let raw_first = out.is_empty() && matches!(f, "P" | "Q" | "S" | "kR");
            let arg = if raw_first {
                let start = self.i;
                while self.s.get(self.i).is_some_and(|c| *c != ',' && *c != ')') {
                    self.i += 1;
                }
                Arg::Raw(self.s[start..self.i].iter().collect::<String>().trim().to_string())
            } else if self.peek().is_some_and(|c| c.is_ascii_digit()) && self.int_is_whole_arg() {
                Arg::Int(self.int()?)
            } else {
                Arg::Val(self.expr(env)?)
            };
            out.push((at, arg));
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// Whether the digits at the cursor form a whole argument (`3` but not `0 ++ X`).
    fn int_is_whole_arg(&self) -> bool {
        let mut j = self.i;
        while self.s.get(j).is_some_and(|c| c.is_ascii_digit()) {
            j += 1;
        }
        while self.s.get(j).is_some_and(|c| c.is_whitespace()) {
            j += 1;
        }
        matches!(self.s.get(j), Some(',') | Some(')'))
    }

    fn call(&mut self, env: &Env, f: &str, args: Vec<(usize, Arg)>, at: usize) -> Result<Value> {
        let alg = env.alg();
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse { line: 1, col: at + 1, msg: format!("`{f}` takes {n} argument(s), got {}", args.len()) })
            }
        };
        let module = |k: usize, me: &Parser| -> Result<Rep> {
            match &args[k].1 {
                Arg::Val(v) => as_module(v.clone(), me, args[k].0),
                Arg::Int(0) => Ok(Rep::zero(alg)),
                _ => Err(me.err(args[k].0, "expected a module")),
            }
        };
        let map = |k: usize, me: &Parser| -> Result<Morphism> {
            match &args[k].1 {
                Arg::Val(Value::Map(m)) => Ok(m.clone()),
                _ => Err(me.err(args[k].0, "expected a morphism")),
            }
        };
        let int = |k: usize, me: &Parser| -> Result<usize> {
            match &args[k].1 {
                Arg::Int(n) => Ok(*n),
                Arg::Raw(r) => r.parse().map_err(|_| me.err(args[k].0, "expected a number")),
                _ => Err(me.err(args[k].0, "expected a number")),
            }
        };
        let raw = |k: usize| -> String {
            match &args[k].1 {
                Arg::Raw(r) => r.clone(),
                _ => String::new(),
            }
        };
        let vertex = |k: usize| -> Result<usize> {
            let v = raw(k);
            alg.vertex(&v).map_err(|_| Error::Unknown(v))
        };
        let kron = |m: Result<Rep>| -> Result<Value> { Ok(Value::Module(embed_kronecker(alg, &m?)?)) };
        let v = match f {
            "P" | "Q" | "I" | "S" => {
                arity(1)?;
                let x = vertex(0)?;
                Value::Module(match f {
                    "P" => alg.projective(x),
                    "S" => alg.simple(x),
                    _ => alg.injective(x),
                })
            }
            "kP" | "kQ" => {
                arity(1)?;
                let k = kronecker::kronecker_algebra(alg.p())?;
                let n = int(0, self)?;
                kron(if f == "kP" { kronecker::pre_projective(&k, n) } else { kronecker::pre_injective(&k, n) })?
            }
            "kR" => {
                arity(2)?;
                let k = kronecker::kronecker_algebra(alg.p())?;
                let pt = KroneckerPoint::parse(alg.p(), &raw(0)).map_err(|e| self.err(args[0].0, e.to_string()))?;
                let t = int(1, self)?;
                kron(kronecker::regular(&k, &pt, t))?
            }
            "tau" | "taum" | "rad" | "soc" | "top" | "modsoc" => {
                arity(1)?;
                let m = module(0, self)?;
                Value::Module(match f {
                    "tau" => tau(&m),
                    "taum" => tau_minus(&m),
                    "rad" => rep::rad(&m).0,
                    "soc" => rep::soc(&m).0,
                    "top" => rep::top(&m).0,
                    _ => rep::quotient(&m, &rep::soc(&m).1)?.0,
                })
            }
            "cut" => {
                arity(2)?;
                let m = module(0, self)?;
                let k = int(1, self)?;
                let mut incl = Morphism::identity(&m);
                for _ in 0..k {
                    let (_, i) = rep::rad(incl.src());
                    incl = incl.comp(&i);
                }
                Value::Module(rep::quotient(&m, &incl)?.0)
            }
            "ker" | "coker" | "im" | "src" | "dst" => {
                arity(1)?;
                let g = map(0, self)?;
                Value::Module(match f {
                    "ker" => rep::kernel(&g).0,
                    "coker" => rep::cokernel(&g).0,
                    "im" => rep::image(&g).0,
                    "src" => g.src().clone(),
                    _ => g.dst().clone(),
                })
            }
            "hom" => {
                arity(2)?;
                Value::Homs(hom_space(&module(0, self)?, &module(1, self)?)?.basis)
            }
            "projcover" | "soclein" | "radin" | "arsplit" | "id" => {
                arity(1)?;
                let m = module(0, self)?;
                Value::Map(match f {
                    "projcover" => proj_cover(&m),
                    "soclein" => rep::soc(&m).1,
                    "radin" => rep::rad(&m).1,
                    "arsplit" => min_right_almost_split(&m)?,
                    _ => Morphism::identity(&m),
                })
            }
            "zero" => {
                arity(2)?;
                Value::Map(Morphism::zero(&module(0, self)?, &module(1, self)?))
            }
            "comp" | "add" => {
                arity(2)?;
                let (g, h) = (map(0, self)?, map(1, self)?);
                let ok = if f == "comp" { g.src() == h.dst() } else { g.src() == h.src() && g.dst() == h.dst() };
                if !ok {
                    return Err(self.err(at, format!("`{f}`: morphisms do not match")));
                }
                Value::Map(if f == "comp" { g.comp(&h) } else { g.add(&h) })
            }
            "row" => {
                if args.is_empty() {
                    return Err(self.err(at, "`row` needs at least one morphism"));
                }
                let fs = (0..args.len()).map(|k| map(k, self)).collect::<Result<Vec<_>>>()?;
                let y = fs[0].dst().clone();
                if fs.iter().any(|g| g.dst() != &y) {
                    return Err(self.err(at, "`row`: morphisms have different targets"));
                }
                Value::Map(rep::row_map(&fs, &y))
            }
            _ => return Err(Error::Unknown(f.to_string())),
        };
        Ok(v)
    }
}

fn as_module(v: Value, p: &Parser, at: usize) -> Result<Rep> {
    match v {
        Value::Module(m) => Ok(m),
        v => Err(p.err(at, format!("expected a module, found {}", v.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRON: &str = "field 2\nvertices a b\narrow alpha b a\narrow beta b a\n";

    #[test]
    fn modules_and_names() {
        let alg = Algebra::parse(KRON).unwrap();
        let env = Env::new(&alg);
        let m = env.module("kP(2) ++ kR(inf, 1)^2").unwrap();
        assert_eq!(m.dims(), &[5, 4]);
        assert_eq!(env.name(&m), "P2 ++ R[inf]1^2");
        assert_eq!(env.module("taum(S(a))").unwrap().dims(), &[3, 2]);
        assert_eq!(env.name(&env.module("P(b)").unwrap()), "P(b)");
        assert_eq!(env.module("kR(x+1, 2)").unwrap().dims(), &[2, 2]);
        assert!(env.module("0").unwrap().is_zero());
    }

    #[test]
    fn morphisms_and_lets() {
        let alg = Algebra::parse(KRON).unwrap();
        let mut env = Env::new(&alg);
        let f = env.run("let R = kR(inf, 1); let Y = S(b); hom(R, Y)[0]").unwrap();
        let Value::Map(f) = f else { panic!() };
        assert!(f.is_epi());
        assert_eq!(env.name(&env.module("R").unwrap()), "R");
        let g = env.morphism("comp(projcover(S(b)), id(P(b)))").unwrap();
        assert!(g.is_epi());
        let h = env.morphism("row(hom(P(a), P(b))[0], hom(P(a), P(b))[1])").unwrap();
        assert!(h.is_epi() || h.rank() == 2);
    }

    #[test]
    fn errors() {
        let alg = Algebra::parse(KRON).unwrap();
        let env = Env::new(&alg);
        assert!(matches!(env.module("P(z)"), Err(Error::Unknown(_))));
        assert!(matches!(env.module("nothere"), Err(Error::Unknown(_))));
        match env.module("P(a) ++ ") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 9),
            e => panic!("{e:?}"),
        }
        assert!(matches!(env.module("hom(P(a), P(b))[7]"), Err(Error::Parse { .. })));
        assert!(matches!(env.module("hom(P(a), P(b))[0]"), Err(Error::Invalid(_))));
    }
}
