//! The automaton on pairs of digits whose infinite paths from 0 are exactly
//! the pairs of admissible α-expansions with equal value.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::expansions::EventuallyPeriodicWord;
use crate::quartic::{decode_annexe_state, encode_annexe_state, AnnexeCodeError, ZAlpha};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("word {0} contains the factor 1111")]
    Inadmissible(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Code(#[from] AnnexeCodeError),
}

/// A state of the automaton, i.e. a value of the accumulator A_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub ZAlpha);

impl State {
    pub const ZERO: State = State(ZAlpha::ZERO);

    pub fn value(&self) -> ZAlpha {
        self.0
    }

    /// 7-digit label over α⁻³..α³.
    pub fn code(&self) -> String {
        encode_annexe_state(&self.0).expect("every state has a code")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// Edge label (ε, ε').
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitPair {
    pub a: u8,
    pub b: u8,
}

impl DigitPair {
    pub const ALL: [DigitPair; 4] = [
        DigitPair { a: 0, b: 0 },
        DigitPair { a: 0, b: 1 },
        DigitPair { a: 1, b: 0 },
        DigitPair { a: 1, b: 1 },
    ];

    pub fn new(a: u8, b: u8) -> Self {
        assert!(a <= 1 && b <= 1);
        DigitPair { a, b }
    }

    pub fn diff(&self) -> i64 {
        self.a as i64 - self.b as i64
    }

    pub fn swapped(&self) -> Self {
        DigitPair {
            a: self.b,
            b: self.a,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let b = s.as_bytes();
        if b.len() != 2 || !b.iter().all(|c| *c == b'0' || *c == b'1') {
            return None;
        }
        Some(DigitPair {
            a: b[0] - b'0',
            b: b[1] - b'0',
        })
    }
}

impl fmt::Display for DigitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: State,
    pub label: DigitPair,
    pub to: State,
}

/// A_{k+1} = A_k/α + (a − b)α³.
pub fn step(a_k: &ZAlpha, label: DigitPair) -> ZAlpha {
    a_k.mul_alpha_inv() + ZAlpha::alpha_pow(3).try_scale(label.diff()).expect("small")
}

/// The 35 states: 0, ± the nonzero admissible combinations of 1, α, α², α³,
/// and ±(α⁻¹+1+α²), ±(α⁻²+α⁻¹+α), ±(α⁻³+α⁻²+1+α³).
pub fn build_state_set() -> BTreeSet<State> {
    let mut s = BTreeSet::new();
    for bits in 0u8..16 {
        if bits == 15 {
            continue;
        }
        let d: Vec<i64> = (0..4).map(|i| ((bits >> i) & 1) as i64).collect();
        let v = ZAlpha::from_digits(0, &d).expect("small");
        s.insert(State(v));
        s.insert(State(-v));
    }
    for v in exceptional_states() {
        s.insert(State(v));
        s.insert(State(-v));
    }
    s
}

/// α⁻¹+1+α², α⁻²+α⁻¹+α and α⁻³+α⁻²+1+α³.
pub fn exceptional_states() -> [ZAlpha; 3] {
    let p = ZAlpha::alpha_pow;
    [
        p(-1) + p(0) + p(2),
        p(-2) + p(-1) + p(1),
        p(-3) + p(-2) + p(0) + p(3),
    ]
}

#[derive(Clone, Debug)]
pub struct Automaton {
    states: BTreeSet<State>,
    edges: Vec<Edge>,
    next: HashMap<(State, DigitPair), State>,
}

impl Automaton {
    pub fn from_parts(states: BTreeSet<State>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        edges.dedup();
        let next = edges.iter().map(|e| ((e.from, e.label), e.to)).collect();
        Automaton {
            states,
            edges,
            next,
        }
    }

    pub fn initial(&self) -> State {
        State::ZERO
    }

    pub fn states(&self) -> &BTreeSet<State> {
        &self.states
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: &ZAlpha) -> bool {
        self.states.contains(&State(*v))
    }

    /// Target of the edge (s, label), if present.
    pub fn next(&self, s: State, label: DigitPair) -> Option<State> {
        self.next.get(&(s, label)).copied()
    }

    pub fn out_edges(&self, s: State) -> impl Iterator<Item = Edge> + '_ {
        DigitPair::ALL.into_iter().filter_map(move |l| {
            self.next(s, l).map(|t| Edge {
                from: s,
                label: l,
                to: t,
            })
        })
    }
}

/// Every (s, (a,b)) whose target α⁻¹s + (a−b)α³ is again a state.
pub fn build_automaton() -> Automaton {
    let states = build_state_set();
    let mut edges = Vec::new();
    for &s in &states {
        for l in DigitPair::ALL {
            let t = State(step(&s.0, l));
            if states.contains(&t) {
                edges.push(Edge {
                    from: s,
                    label: l,
                    to: t,
                });
            }
        }
    }
    Automaton::from_parts(states, edges)
}

/// Restriction to the states reachable from 0.
pub fn reachable_subautomaton(aut: &Automaton) -> Automaton {
    let mut seen = BTreeSet::from([aut.initial()]);
    let mut stack = vec![aut.initial()];
    while let Some(s) = stack.pop() {
        for e in aut.out_edges(s) {
            if seen.insert(e.to) {
                stack.push(e.to);
            }
        }
    }
    let edges = aut
        .edges()
        .iter()
        .filter(|e| seen.contains(&e.from) && seen.contains(&e.to))
        .copied()
        .collect();
    Automaton::from_parts(seen, edges)
}

/// DOT digraph with nodes named by their 7-digit codes.
pub fn export_dot(aut: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    out.push_str(&format!("  \"{}\" [shape=doublecircle];\n", aut.initial()));
    for s in aut.states() {
        if *s != aut.initial() {
            out.push_str(&format!("  \"{s}\";\n"));
        }
    }
    for e in aut.edges() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"({},{})\"];\n",
            e.from, e.to, e.label.a, e.label.b
        ));
    }
    out.push_str("}\n");
    out
}

/// An edge with its endpoints kept as written.
pub type RawEdge = (String, DigitPair, String);

/// Node names and labelled edges read back from [`export_dot`] output.
pub fn parse_dot(text: &str) -> Result<(Vec<String>, Vec<RawEdge>), AutomatonError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let err = |line, msg: &str| AutomatonError::Parse {
        line,
        msg: msg.to_string(),
    };
    match lines.next() {
        Some((_, l)) if l.starts_with("digraph") && l.ends_with('{') => {}
        _ => return Err(err(1, "expected `digraph <name> {`")),
    }
    let mut closed = false;
    for (n, l) in lines {
        if l.is_empty() || l.starts_with("rankdir") {
            continue;
        }
        if l == "}" {
            closed = true;
            continue;
        }
        if closed {
            return Err(err(n, "content after closing brace"));
        }
        let l = l.strip_suffix(';').ok_or_else(|| err(n, "missing `;`"))?;
        let quoted: Vec<&str> = l.split('"').collect();
        if l.contains("->") {
            // "from" -> "to" [label="(a,b)"]
            if quoted.len() != 7 {
                return Err(err(n, "malformed edge"));
            }
            let lab = quoted[5]
                .trim_start_matches('(')
                .trim_end_matches(')')
                .replace(',', "");
            let label = DigitPair::parse(&lab).ok_or_else(|| err(n, "bad label"))?;
            edges.push((quoted[1].to_string(), label, quoted[3].to_string()));
        } else {
            if quoted.len() < 3 {
                return Err(err(n, "malformed node"));
            }
            nodes.push(quoted[1].to_string());
        }
    }
    if !closed {
        return Err(err(text.lines().count(), "missing closing brace"));
    }
    Ok((nodes, edges))
}

/// One edge per line: `<from-code> <ab> <to-code>`.
pub fn export_edges(aut: &Automaton) -> String {
    aut.edges()
        .iter()
        .map(|e| format!("{} {} {}\n", e.from, e.label, e.to))
        .collect()
}

/// Parses the line-oriented edge list, keeping codes as written. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Vec<RawEdge>, AutomatonError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| AutomatonError::Parse {
            line: i + 1,
            msg: msg.to_string(),
        };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(err("expected three fields"));
        }
        let label = DigitPair::parse(f[1]).ok_or_else(|| err("label must be two binary digits"))?;
        decode_annexe_state(f[0])?;
        decode_annexe_state(f[2])?;
        out.push((f[0].to_string(), label, f[2].to_string()));
    }
    Ok(out)
}

/// Two admissible words read against a common index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWord {
    pub left: EventuallyPeriodicWord,
    pub right: EventuallyPeriodicWord,
}

impl PairWord {
    pub fn new(
        left: EventuallyPeriodicWord,
        right: EventuallyPeriodicWord,
    ) -> Result<Self, AutomatonError> {
        for w in [&left, &right] {
            if !w.is_admissible() {
                return Err(AutomatonError::Inadmissible(w.to_string()));
            }
        }
        Ok(PairWord { left, right })
    }

    /// Smallest index carrying a nonzero digit in either word.
    pub fn start(&self) -> i64 {
        match (self.left.is_zero(), self.right.is_zero()) {
            (true, true) => 0,
            (true, false) => self.right.start(),
            (false, true) => self.left.start(),
            (false, false) => self.left.start().min(self.right.start()),
        }
    }

    pub fn label(&self, i: i64) -> DigitPair {
        DigitPair {
            a: self.left.digit(i),
            b: self.right.digit(i),
        }
    }

    /// Index from which both words are periodic, and the joint period.
    pub fn periodic_from(&self) -> (i64, i64) {
        let n0 = self
            .left
            .period_start()
            .max(self.right.period_start())
            .max(self.start());
        let l = (self.left.period().len() as i64).lcm(&(self.right.period().len() as i64));
        (n0, l)
    }
}

/// The accumulator sequence A_k along a pair, cut at the first state
/// outside S or at the first repetition inside the periodic regime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityTrace {
    pub equal: bool,
    /// (index k, A_k) in order of visit.
    pub visited: Vec<(i64, ZAlpha)>,
    /// Index of the first A_k outside S.
    pub left_at: Option<i64>,
}

impl EqualityTrace {
    pub fn states(&self) -> HashSet<ZAlpha> {
        self.visited.iter().map(|(_, v)| *v).collect()
    }
}

/// Runs A_k from 0 through the pair and reports whether it stays in S forever.
pub fn check_equal_trace(p: &PairWord, aut: &Automaton) -> EqualityTrace {
    let l = p.start();
    let (n0, period) = p.periodic_from();
    let mut a = ZAlpha::ZERO;
    let mut visited = Vec::new();
    let mut seen: HashMap<(ZAlpha, i64), i64> = HashMap::new();
    let mut k = l;
    loop {
        a = step(&a, p.label(k));
        visited.push((k, a));
        if !aut.contains(&a) {
            return EqualityTrace {
                equal: false,
                visited,
                left_at: Some(k),
            };
        }
        if k >= n0 && seen.insert((a, (k - n0) % period), k).is_some() {
            return EqualityTrace {
                equal: true,
                visited,
                left_at: None,
            };
        }
        k += 1;
    }
}

/// Σ ε_i α^i = Σ ε'_i α^i, decided on the automaton.
pub fn check_equal(p: &PairWord, aut: &Automaton) -> bool {
    check_equal_trace(p, aut).equal
}
