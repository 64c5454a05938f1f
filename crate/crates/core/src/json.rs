//! File schemas and (de)serialization.
//!
//! Automata: `{"alphabet": "ab", "xStates": [...], "yStates": [...],
//! "initial": "...", "rho": {state: {sym: state}}, "sigma": {...},
//! "xi": {...}, "final": [...]}`.
//!
//! Semigroups: `{"alphabet": "ab", "plus": [...], "omega": [...],
//! "dot": {p: {p: p}}, "times": {p: {o: o}}, "omegaPow": {p: o},
//! "gen": {sym: p}, "recognizing": [...]}`.
//!
//! Lassos: `{"spoke": "...", "loop": "..."}`. Output is canonical: map keys
//! are sorted, so printing is byte-stable for a fixed input.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize, Serializer};

use crate::automaton::LassoAutomaton;
use crate::error::{Error, Result};
use crate::lasso::{Alphabet, Lasso, Word};
use crate::semigroup::{ExtendedLassoSemigroup, LassoSemigroup};

pub(crate) fn word_as_string<S: Serializer>(w: &Word, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(&w.symbols().iter().collect::<String>())
}

/// On-disk form of a lasso.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoFile {
    pub spoke: String,
    #[serde(rename = "loop")]
    pub loop_word: String,
}

impl LassoFile {
    pub fn into_lasso(self) -> Result<Lasso> {
        Lasso::new(Word::from(self.spoke.as_str()), Word::from(self.loop_word.as_str()))
    }

    pub fn from_lasso(l: &Lasso) -> Self {
        LassoFile {
            spoke: l.spoke().symbols().iter().collect(),
            loop_word: l.cycle().symbols().iter().collect(),
        }
    }
}

type Table = BTreeMap<String, BTreeMap<String, String>>;

/// On-disk form of a lasso automaton.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AutomatonFile {
    pub alphabet: String,
    pub x_states: Vec<String>,
    pub y_states: Vec<String>,
    pub initial: String,
    pub rho: Table,
    pub sigma: Table,
    pub xi: Table,
    #[serde(rename = "final")]
    pub final_states: Vec<String>,
}

fn read_table(
    name: &str,
    table: &Table,
    rows: &[String],
    row_index: &HashMap<&str, usize>,
    alphabet: &Alphabet,
    target_index: &HashMap<&str, usize>,
) -> Result<Vec<Vec<usize>>> {
    for state in table.keys() {
        if !row_index.contains_key(state.as_str()) {
            return Err(Error::invalid(format!("{name} row for unknown state {state:?}")));
        }
    }
    let mut out = Vec::with_capacity(rows.len());
    for state in rows {
        let row = table
            .get(state)
            .ok_or_else(|| Error::invalid(format!("partial {name}: no row for state {state:?}")))?;
        let mut dense = Vec::with_capacity(alphabet.len());
        for &c in alphabet.symbols() {
            let target = row.get(&c.to_string()).ok_or_else(|| {
                Error::invalid(format!("partial {name}: state {state:?} has no transition on '{c}'"))
            })?;
            let t = target_index.get(target.as_str()).ok_or_else(|| {
                Error::invalid(format!("{name}[{state:?}]['{c}'] targets unknown state {target:?}"))
            })?;
            dense.push(*t);
        }
        for sym in row.keys() {
            let mut chars = sym.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if alphabet.contains(c) => {}
                _ => {
                    return Err(Error::invalid(format!(
                        "{name}[{state:?}] uses symbol {sym:?} outside the alphabet"
                    )))
                }
            }
        }
        out.push(dense);
    }
    Ok(out)
}

impl AutomatonFile {
    pub fn into_automaton(self) -> Result<LassoAutomaton> {
        let alphabet = Alphabet::parse(&self.alphabet)?;
        let x_index: HashMap<&str, usize> = self
            .x_states
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let y_index: HashMap<&str, usize> = self
            .y_states
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if x_index.len() != self.x_states.len() || y_index.len() != self.y_states.len() {
            return Err(Error::invalid("duplicate state names within a sort"));
        }
        let initial = *x_index
            .get(self.initial.as_str())
            .ok_or_else(|| Error::invalid(format!("initial state {:?} must be an X-state", self.initial)))?;
        let rho = read_table("rho", &self.rho, &self.x_states, &x_index, &alphabet, &x_index)?;
        let sigma = read_table("sigma", &self.sigma, &self.x_states, &x_index, &alphabet, &y_index)?;
        let xi = read_table("xi", &self.xi, &self.y_states, &y_index, &alphabet, &y_index)?;
        let mut final_y = vec![false; self.y_states.len()];
        for name in &self.final_states {
            match y_index.get(name.as_str()) {
                Some(&y) => final_y[y] = true,
                None => {
                    return Err(Error::invalid(format!(
                        "final must be Y-states: {name:?} is not a Y-state"
                    )))
                }
            }
        }
        LassoAutomaton::new(
            alphabet,
            self.x_states,
            self.y_states,
            initial,
            rho,
            sigma,
            xi,
            final_y,
        )
    }

    pub fn from_automaton(a: &LassoAutomaton) -> Self {
        let table = |rows: &[String], get: &dyn Fn(usize, usize) -> String| -> Table {
            rows.iter()
                .enumerate()
                .map(|(i, name)| {
                    let row = a
                        .alphabet()
                        .symbols()
                        .iter()
                        .enumerate()
                        .map(|(s, &c)| (c.to_string(), get(i, s)))
                        .collect();
                    (name.clone(), row)
                })
                .collect()
        };
        AutomatonFile {
            alphabet: a.alphabet().as_text(),
            x_states: a.x_names().to_vec(),
            y_states: a.y_names().to_vec(),
            initial: a.x_name(a.initial()).to_string(),
            rho: table(a.x_names(), &|x, s| a.x_name(a.rho_step(x, s)).to_string()),
            sigma: table(a.x_names(), &|x, s| a.y_name(a.sigma_step(x, s)).to_string()),
            xi: table(a.y_names(), &|y, s| a.y_name(a.xi_step(y, s)).to_string()),
            final_states: (0..a.y_count())
                .filter(|&y| a.is_final(y))
                .map(|y| a.y_name(y).to_string())
                .collect(),
        }
    }
}

/// On-disk form of an extended lasso semigroup.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SemigroupFile {
    pub alphabet: String,
    pub plus: Vec<String>,
    pub omega: Vec<String>,
    pub dot: Table,
    pub times: Table,
    pub omega_pow: BTreeMap<String, String>,
    pub gen: BTreeMap<String, String>,
    pub recognizing: Vec<String>,
}

impl SemigroupFile {
    pub fn into_semigroup(self) -> Result<ExtendedLassoSemigroup> {
        let alphabet = Alphabet::parse(&self.alphabet)?;
        let plus_index: HashMap<&str, usize> = self
            .plus
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let omega_index: HashMap<&str, usize> = self
            .omega
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if plus_index.len() != self.plus.len() || omega_index.len() != self.omega.len() {
            return Err(Error::invalid("duplicate element names within a sort"));
        }
        let read_square = |name: &str, table: &Table, colnames: &[String], target: &HashMap<&str, usize>| -> Result<Vec<Vec<usize>>> {
            let mut out = Vec::with_capacity(self.plus.len());
            for row_name in &self.plus {
                let row = table.get(row_name).ok_or_else(|| {
                    Error::invalid(format!("partial {name}: no row for {row_name:?}"))
                })?;
                let mut dense = Vec::with_capacity(colnames.len());
                for col_name in colnames {
                    let entry = row.get(col_name).ok_or_else(|| {
                        Error::invalid(format!("partial {name}: missing entry [{row_name:?}][{col_name:?}]"))
                    })?;
                    let t = target.get(entry.as_str()).ok_or_else(|| {
                        Error::invalid(format!("{name} entry targets unknown element {entry:?}"))
                    })?;
                    dense.push(*t);
                }
                out.push(dense);
            }
            Ok(out)
        };
        let dot = read_square("dot", &self.dot, &self.plus, &plus_index)?;
        let times = read_square("times", &self.times, &self.omega, &omega_index)?;
        let mut omega_pow = Vec::with_capacity(self.plus.len());
        for name in &self.plus {
            let entry = self
                .omega_pow
                .get(name)
                .ok_or_else(|| Error::invalid(format!("partial omegaPow: no entry for {name:?}")))?;
            omega_pow.push(*omega_index.get(entry.as_str()).ok_or_else(|| {
                Error::invalid(format!("omegaPow entry targets unknown element {entry:?}"))
            })?);
        }
        let mut gen = Vec::with_capacity(alphabet.len());
        for &c in alphabet.symbols() {
            let image = self
                .gen
                .get(&c.to_string())
                .ok_or_else(|| Error::invalid(format!("gen has no image for symbol '{c}'")))?;
            gen.push(*plus_index.get(image.as_str()).ok_or_else(|| {
                Error::invalid(format!("gen image {image:?} is not a word-sort element"))
            })?);
        }
        for sym in self.gen.keys() {
            let mut chars = sym.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if alphabet.contains(c) => {}
                _ => return Err(Error::invalid(format!("gen maps symbol {sym:?} outside the alphabet"))),
            }
        }
        let mut recognizing = vec![false; self.omega.len()];
        for name in &self.recognizing {
            match omega_index.get(name.as_str()) {
                Some(&o) => recognizing[o] = true,
                None => {
                    return Err(Error::invalid(format!(
                        "recognizing element {name:?} is not an omega-sort element"
                    )))
                }
            }
        }
        drop(plus_index);
        drop(omega_index);
        let base = LassoSemigroup::new(self.plus, self.omega, dot, times, omega_pow)?;
        ExtendedLassoSemigroup::new(alphabet, base, gen, recognizing)
    }

    pub fn from_semigroup(e: &ExtendedLassoSemigroup) -> Self {
        let base = e.base();
        let square = |rows: &[String], cols: &[String], get: &dyn Fn(usize, usize) -> String| -> Table {
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    let inner = cols
                        .iter()
                        .enumerate()
                        .map(|(j, col)| (col.clone(), get(i, j)))
                        .collect();
                    (row.clone(), inner)
                })
                .collect()
        };
        SemigroupFile {
            alphabet: e.alphabet().as_text(),
            plus: base.plus_names().to_vec(),
            omega: base.omega_names().to_vec(),
            dot: square(base.plus_names(), base.plus_names(), &|i, j| {
                base.plus_name(base.dot(i, j)).to_string()
            }),
            times: square(base.plus_names(), base.omega_names(), &|i, j| {
                base.omega_name(base.times(i, j)).to_string()
            }),
            omega_pow: base
                .plus_names()
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), base.omega_name(base.omega_pow(i)).to_string()))
                .collect(),
            gen: e
                .alphabet()
                .symbols()
                .iter()
                .enumerate()
                .map(|(s, &c)| (c.to_string(), base.plus_name(e.gen(s)).to_string()))
                .collect(),
            recognizing: (0..base.omega_count())
                .filter(|&o| e.recognizes_element(o))
                .map(|o| base.omega_name(o).to_string())
                .collect(),
        }
    }
}

/// Either object kind, detected by shape.
#[derive(Debug, Clone)]
pub enum Object {
    Automaton(LassoAutomaton),
    Semigroup(ExtendedLassoSemigroup),
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed JSON: {e}")))
}

pub fn parse_automaton(text: &str) -> Result<LassoAutomaton> {
    from_json::<AutomatonFile>(text)?.into_automaton()
}

pub fn parse_semigroup(text: &str) -> Result<ExtendedLassoSemigroup> {
    from_json::<SemigroupFile>(text)?.into_semigroup()
}

/// Parses either schema, keyed on the presence of `"xStates"`.
pub fn parse_object(text: &str) -> Result<Object> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed JSON: {e}")))?;
    let is_automaton = value.get("xStates").is_some();
    if is_automaton {
        let file: AutomatonFile = serde_json::from_value(value)
            .map_err(|e| Error::invalid(format!("malformed automaton file: {e}")))?;
        Ok(Object::Automaton(file.into_automaton()?))
    } else if value.get("plus").is_some() {
        let file: SemigroupFile = serde_json::from_value(value)
            .map_err(|e| Error::invalid(format!("malformed semigroup file: {e}")))?;
        Ok(Object::Semigroup(file.into_semigroup()?))
    } else {
        Err(Error::invalid(
            "unrecognized object: expected an automaton (xStates) or a semigroup (plus)",
        ))
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("schema types serialize");
    text.push('\n');
    text
}

pub fn print_automaton(a: &LassoAutomaton) -> String {
    to_pretty(&AutomatonFile::from_automaton(a))
}

pub fn print_semigroup(e: &ExtendedLassoSemigroup) -> String {
    to_pretty(&SemigroupFile::from_semigroup(e))
}

pub fn print_object(o: &Object) -> String {
    match o {
        Object::Automaton(a) => print_automaton(a),
        Object::Semigroup(e) => print_semigroup(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn automaton_round_trip() {
        let a = corpus::a1();
        let text = print_automaton(&a);
        let back = parse_automaton(&text).unwrap();
        assert_eq!(a, back);
        assert_eq!(print_automaton(&back), text);
    }

    #[test]
    fn semigroup_round_trip() {
        let e = crate::functors::alg(&corpus::a2(), &crate::Caps::default()).unwrap();
        let text = print_semigroup(&e);
        let back = parse_semigroup(&text).unwrap();
        assert_eq!(e, back);
        assert_eq!(print_semigroup(&back), text);
    }

    #[test]
    fn partial_sigma_is_rejected() {
        let a = corpus::a1();
        let mut file = AutomatonFile::from_automaton(&a);
        file.sigma.get_mut("x").unwrap().remove("a");
        let err = file.into_automaton().unwrap_err();
        assert!(err.to_string().contains("partial sigma"), "{err}");
    }

    #[test]
    fn final_state_must_be_a_y_state() {
        let a = corpus::a1();
        let mut file = AutomatonFile::from_automaton(&a);
        file.final_states.push("x".into());
        let err = file.into_automaton().unwrap_err();
        assert!(err.to_string().contains("final must be Y-states"), "{err}");
    }

    #[test]
    fn overlapping_names_are_rejected() {
        let a = corpus::a1();
        let mut file = AutomatonFile::from_automaton(&a);
        file.y_states[0] = "x".into();
        file.xi.insert("x".into(), file.xi["y1"].clone());
        file.xi.remove("y1");
        let err = file.into_automaton().unwrap_err();
        assert!(err.to_string().contains("overlapping") || err.to_string().contains("unknown"), "{err}");
    }

    #[test]
    fn malformed_json_is_an_input_error() {
        assert!(parse_automaton("{ not json").is_err());
        assert!(parse_object("{\"neither\": true}").is_err());
    }

    #[test]
    fn lasso_file_round_trip() {
        let l = Lasso::new(Word::from("ab"), Word::from("ba")).unwrap();
        let f = LassoFile::from_lasso(&l);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"spoke":"ab","loop":"ba"}"#);
        assert_eq!(f.into_lasso().unwrap(), l);
    }
}
