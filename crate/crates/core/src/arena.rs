//! Weighted two-player arenas and their text/JSON encodings.
//!
//! The text format is line oriented, `#` starts a comment:
//!
//! ```text
//! state q0 owner=1 init
//! state qt owner=1 target
//! edge q0 -2 qt
//! edge qt 0 qt
//! ```
//!
//! States may be declared in any order relative to edges; the order of the
//! `state` lines is the canonical state order used by every solver.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ArenaError;

/// Index of a state inside its [`Arena`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    fn code(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: StateId,
    pub weight: i64,
    pub dst: StateId,
}

/// A finite weighted game graph. Immutable once built; every state has at
/// least one outgoing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    initial: StateId,
    targets: BTreeSet<StateId>,
    out: Vec<Vec<usize>>,
}

impl Arena {
    /// Validates and assembles an arena. `states` fixes the canonical order.
    pub fn new(
        states: Vec<(String, Player)>,
        edges: Vec<Edge>,
        initial: StateId,
        targets: impl IntoIterator<Item = StateId>,
    ) -> Result<Arena, ArenaError> {
        let n = states.len();
        let mut seen = HashMap::new();
        for (i, (name, _)) in states.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(ArenaError::DuplicateState {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        if initial.0 >= n {
            return Err(if n == 0 {
                ArenaError::NoInitialState
            } else {
                ArenaError::StateOutOfRange(initial.0)
            });
        }
        let targets: BTreeSet<StateId> = targets.into_iter().collect();
        if let Some(t) = targets.iter().find(|t| t.0 >= n) {
            return Err(ArenaError::StateOutOfRange(t.0));
        }
        let mut out = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.src.0 >= n {
                return Err(ArenaError::StateOutOfRange(e.src.0));
            }
            if e.dst.0 >= n {
                return Err(ArenaError::StateOutOfRange(e.dst.0));
            }
            out[e.src.0].push(i);
        }
        if let Some(q) = out.iter().position(Vec::is_empty) {
            return Err(ArenaError::MissingOutgoingEdge(states[q].0.clone()));
        }
        let (names, owners) = states.into_iter().unzip();
        Ok(Arena {
            names,
            owners,
            edges,
            initial,
            targets,
            out,
        })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.names.len()).map(StateId)
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q.0]
    }

    pub fn owner(&self, q: StateId) -> Player {
        self.owners[q.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Indices of the edges leaving `q`, in canonical (declaration) order.
    pub fn out_edges(&self, q: StateId) -> &[usize] {
        &self.out[q.0]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn targets(&self) -> &BTreeSet<StateId> {
        &self.targets
    }

    pub fn is_target(&self, q: StateId) -> bool {
        self.targets.contains(&q)
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(StateId)
    }

    /// True when player 2 owns no state.
    pub fn is_one_player(&self) -> bool {
        self.owners.iter().all(|&p| p == Player::P1)
    }

    /// Largest positive edge weight, or 0 when no weight is positive.
    pub fn max_pos_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0).max(0)
    }

    pub fn sum_pos_weights(&self) -> i64 {
        self.edges
            .iter()
            .filter(|e| e.weight > 0)
            .fold(0i64, |acc, e| crate::arith::add(acc, e.weight))
    }

    /// Sum of the absolute values of the negative weights.
    pub fn sum_neg_weights(&self) -> i64 {
        self.edges
            .iter()
            .filter(|e| e.weight < 0)
            .fold(0i64, |acc, e| crate::arith::sub(acc, e.weight))
    }

    pub fn with_initial(&self, initial: StateId) -> Arena {
        assert!(initial.0 < self.num_states());
        Arena {
            initial,
            ..self.clone()
        }
    }

    pub fn with_targets(&self, targets: impl IntoIterator<Item = StateId>) -> Arena {
        let targets: BTreeSet<StateId> = targets.into_iter().collect();
        assert!(targets.iter().all(|t| t.0 < self.num_states()));
        Arena {
            targets,
            ..self.clone()
        }
    }

    /// Same graph with every state owned by player 1.
    pub fn as_one_player(&self) -> Arena {
        Arena {
            owners: vec![Player::P1; self.num_states()],
            ..self.clone()
        }
    }

    /// Keeps only the listed edges (indices into [`Arena::edges`]).
    pub fn restrict_edges(&self, keep: &[usize]) -> Result<Arena, ArenaError> {
        let states = self
            .names
            .iter()
            .cloned()
            .zip(self.owners.iter().copied())
            .collect();
        let edges = keep.iter().map(|&i| self.edges[i]).collect();
        Arena::new(states, edges, self.initial, self.targets.iter().copied())
    }

    /// Renders the arena in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for q in self.states() {
            let _ = write!(s, "state {} owner={}", self.name(q), self.owner(q).code());
            if q == self.initial {
                s.push_str(" init");
            }
            if self.is_target(q) {
                s.push_str(" target");
            }
            s.push('\n');
        }
        for e in &self.edges {
            let _ = writeln!(s, "edge {} {} {}", self.name(e.src), e.weight, self.name(e.dst));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let file = ArenaFile {
            states: self
                .states()
                .map(|q| StateEntry {
                    name: self.name(q).to_string(),
                    owner: self.owner(q).code(),
                    init: q == self.initial,
                    target: self.is_target(q),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeEntry {
                    src: self.name(e.src).to_string(),
                    weight: e.weight,
                    dst: self.name(e.dst).to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("arena serializes")
    }
}

/// Incremental construction of arenas in code.
#[derive(Default, Debug, Clone)]
pub struct ArenaBuilder {
    states: Vec<(String, Player)>,
    edges: Vec<Edge>,
    initial: Option<StateId>,
    targets: Vec<StateId>,
}

impl ArenaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: impl Into<String>, owner: Player) -> StateId {
        self.states.push((name.into(), owner));
        StateId(self.states.len() - 1)
    }

    pub fn edge(&mut self, src: StateId, weight: i64, dst: StateId) -> &mut Self {
        self.edges.push(Edge { src, weight, dst });
        self
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.initial = Some(q);
        self
    }

    pub fn target(&mut self, q: StateId) -> &mut Self {
        self.targets.push(q);
        self
    }

    pub fn build(self) -> Result<Arena, ArenaError> {
        let initial = self.initial.ok_or(ArenaError::NoInitialState)?;
        Arena::new(self.states, self.edges, initial, self.targets)
    }
}

/// Parses the line-oriented text format.
pub fn parse_arena(text: &str) -> Result<Arena, ArenaError> {
    let mut states: Vec<(String, Player)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut initial: Option<usize> = None;
    let mut targets = Vec::new();
    let mut raw_edges: Vec<(usize, String, i64, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let syntax = |message: String| ArenaError::Syntax { line, message };
        match keyword {
            "state" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| syntax("`state` needs a name".into()))?
                    .to_string();
                let mut owner = None;
                let mut is_init = false;
                let mut is_target = false;
                for tok in tokens {
                    match tok {
                        "init" => is_init = true,
                        "target" => is_target = true,
                        "owner=1" => owner = Some(Player::P1),
                        "owner=2" => owner = Some(Player::P2),
                        other => return Err(syntax(format!("unexpected token `{other}`"))),
                    }
                }
                let owner = owner.ok_or_else(|| syntax(format!("state `{name}` lacks owner=1|2")))?;
                if index.contains_key(&name) {
                    return Err(ArenaError::DuplicateState { line, name });
                }
                let id = states.len();
                index.insert(name.clone(), id);
                if is_init {
                    if let Some(prev) = initial {
                        return Err(ArenaError::MultipleInitialStates(
                            states[prev].0.clone(),
                            name,
                        ));
                    }
                    initial = Some(id);
                }
                if is_target {
                    targets.push(StateId(id));
                }
                states.push((name, owner));
            }
            "edge" => {
                let parts: Vec<&str> = tokens.collect();
                if parts.len() != 3 {
                    return Err(syntax("expected `edge <src> <weight> <dst>`".into()));
                }
                let weight: i64 = parts[1]
                    .parse()
                    .map_err(|_| syntax(format!("invalid weight `{}`", parts[1])))?;
                raw_edges.push((line, parts[0].to_string(), weight, parts[2].to_string()));
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }

    let lookup = |line: usize, name: &str| {
        index
            .get(name)
            .copied()
            .map(StateId)
            .ok_or_else(|| ArenaError::UnknownState {
                line,
                name: name.to_string(),
            })
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, src, weight, dst) in &raw_edges {
        edges.push(Edge {
            src: lookup(*line, src)?,
            weight: *weight,
            dst: lookup(*line, dst)?,
        });
    }
    let initial = initial.ok_or(ArenaError::NoInitialState)?;
    Arena::new(states, edges, StateId(initial), targets)
}

#[derive(Serialize, Deserialize)]
struct ArenaFile {
    states: Vec<StateEntry>,
    edges: Vec<EdgeEntry>,
}

#[derive(Serialize, Deserialize)]
struct StateEntry {
    name: String,
    owner: u8,
    #[serde(default)]
    init: bool,
    #[serde(default)]
    target: bool,
}

#[derive(Serialize, Deserialize)]
struct EdgeEntry {
    src: String,
    weight: i64,
    dst: String,
}

/// Parses the JSON form: `{"states":[{"name","owner","init","target"}], "edges":[{"src","weight","dst"}]}`.
pub fn parse_arena_json(text: &str) -> Result<Arena, ArenaError> {
    let file: ArenaFile = serde_json::from_str(text).map_err(|e| ArenaError::Json(e.to_string()))?;
    // Re-emit as text so both encodings share one validation path.
    let mut s = String::new();
    for st in &file.states {
        let owner = match st.owner {
            1 | 2 => st.owner,
            o => return Err(ArenaError::Json(format!("owner must be 1 or 2, got {o}"))),
        };
        if st.name.is_empty() || st.name.contains(char::is_whitespace) || st.name.contains('#') {
            return Err(ArenaError::Json(format!("invalid state name `{}`", st.name)));
        }
        let _ = write!(s, "state {} owner={owner}", st.name);
        if st.init {
            s.push_str(" init");
        }
        if st.target {
            s.push_str(" target");
        }
        s.push('\n');
    }
    for e in &file.edges {
        let _ = writeln!(s, "edge {} {} {}", e.src, e.weight, e.dst);
    }
    parse_arena(&s)
}

/// Reads an arena file, choosing JSON when the extension is `.json`.
pub fn load_arena(path: &Path) -> Result<Arena, Box<dyn std::error::Error + Send + Sync>> {
    let text = std::fs::read_to_string(path)?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    Ok(if is_json {
        parse_arena_json(&text)?
    } else {
        parse_arena(&text)?
    })
}
