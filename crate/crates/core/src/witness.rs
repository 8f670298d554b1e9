//! Equal-valued pairs of α-expansions whose accumulator paths together
//! visit every state of S.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::automaton::{build_automaton, check_equal_trace, PairWord, State};
use crate::expansions::EventuallyPeriodicWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("{0} is not a state of the automaton")]
    NotAState(State),
}

/// A family of eventually periodic words, all with the same α-value.
#[derive(Clone, Copy, Debug)]
pub struct Identity {
    pub name: &'static str,
    /// (start index, preperiod, period), digits in increasing index order.
    pub words: &'static [(i64, &'static str, &'static str)],
}

impl Identity {
    pub fn expansions(&self) -> Vec<EventuallyPeriodicWord> {
        self.words
            .iter()
            .map(|&(s, pre, per)| EventuallyPeriodicWord::parse(s, pre, per).expect("table word"))
            .collect()
    }

    /// Every ordered pair of distinct expansions.
    pub fn pairs(&self) -> Vec<PairWord> {
        let ws = self.expansions();
        let mut out = Vec::new();
        for (i, u) in ws.iter().enumerate() {
            for (j, v) in ws.iter().enumerate() {
                if i != j {
                    out.push(PairWord::new(u.clone(), v.clone()).expect("admissible table word"));
                }
            }
        }
        out
    }
}

pub const IDENTITIES: [Identity; 7] = [
    // −α³ + Σ_{i≥1} (α^{4i} + α^{4i+1} + α^{4i+2}) rewritten three ways
    Identity {
        name: "minus-alpha3",
        words: &[
            (4, "", "1110"),
            (0, "1110", "0111"),
            (0, "01101", "0111"),
            (0, "001011", "0111"),
        ],
    },
    // Σ_{i≥1} α^{4i} = 1 + Σ_{i≥1} α^{4i+1}
    Identity {
        name: "alpha4i",
        words: &[(4, "", "1000"), (0, "10000", "1000")],
    },
    Identity {
        name: "alpha2i",
        words: &[(4, "", "10"), (0, "1010", "01")],
    },
    // α⁻³+α⁻²+1+α³ + Σ (α^{4i+2}+α^{4i+3}) = Σ (α^{4i}+α^{4i+1})
    Identity {
        name: "exceptional-cycle",
        words: &[(-3, "1101001", "0011"), (4, "", "1100")],
    },
    Identity {
        name: "alpha4-shift",
        words: &[
            (4, "1001", "0001"),
            (0, "10010", "1000"),
            (0, "110100", "1000"),
        ],
    },
    // α⁴ + Σ α^{4i+2} = 1+α²+α³ + Σ α^{4i+1}
    Identity {
        name: "alpha4-plus",
        words: &[(4, "10", "1000"), (0, "10110", "1000")],
    },
    // A point of 𝓔 with six distinct expansions.
    Identity {
        name: "six-expansions",
        words: &[
            (0, "0100", "10"),
            (4, "", "1100"),
            (0, "11100", "10"),
            (0, "11000", "1100"),
            (0, "0110100", "1100"),
            (-3, "1101001", "0011"),
        ],
    },
];

pub fn identity(name: &str) -> Option<&'static Identity> {
    IDENTITIES.iter().find(|i| i.name == name)
}

fn witness_table() -> &'static BTreeMap<State, PairWord> {
    static TABLE: OnceLock<BTreeMap<State, PairWord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let aut = build_automaton();
        let mut table = BTreeMap::new();
        for id in &IDENTITIES {
            for p in id.pairs() {
                let tr = check_equal_trace(&p, &aut);
                assert!(tr.equal, "identity {} is not recognized", id.name);
                for (_, v) in tr.visited {
                    table.entry(State(v)).or_insert_with(|| p.clone());
                }
            }
        }
        table
    })
}

/// A stored equal-valued pair whose accumulator path passes through `u`.
pub fn witness_for_state(u: State) -> Result<PairWord, WitnessError> {
    witness_table()
        .get(&u)
        .cloned()
        .ok_or(WitnessError::NotAState(u))
}
