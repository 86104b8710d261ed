//! PV programs and their state spaces.
//!
//! Each process with `k` actions contributes a chain of `k` edges; the
//! state space is the product of these chains with the cells where some
//! semaphore is over-subscribed removed. A process holds `s` at vertex `j`
//! when more `P s` than `V s` occur among its first `j` actions, and on the
//! edge `j → j+1` when it holds `s` at either end.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pcs::{CellRef, PrecubicalSet};

pub const MAX_PROCESSES: usize = 4;
pub const MAX_ACTIONS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    P,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub op: Op,
    /// Index into [`PvProgram::semaphores`].
    pub sem: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub actions: Vec<Action>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PvProgram {
    /// `(name, capacity)` in declaration order.
    pub semaphores: Vec<(String, u32)>,
    pub processes: Vec<Process>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Format { line, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Line number, name and unresolved actions of a process.
type RawProcess = (usize, String, Vec<(Op, String)>);

/// Parses the `pv v1` format. Semaphores may be declared after their use.
pub fn parse_pv(text: &str) -> Result<PvProgram> {
    let mut header = false;
    let mut sems: Vec<(String, u32)> = Vec::new();
    let mut sem_index: HashMap<String, usize> = HashMap::new();
    let mut procs: Vec<RawProcess> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !header {
            if line.split_whitespace().collect::<Vec<_>>() != ["pv", "v1"] {
                return Err(err(line_no, "expected header `pv v1`"));
            }
            header = true;
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "sem" => {
                let [_, name, cap] = tokens.as_slice() else {
                    return Err(err(line_no, "expected `sem <name> <capacity>`"));
                };
                if !valid_name(name) {
                    return Err(err(line_no, format!("bad semaphore name `{name}`")));
                }
                let cap: u32 =
                    cap.parse().ok().filter(|&c| c > 0).ok_or_else(|| err(line_no, format!("bad capacity `{cap}`")))?;
                if sem_index.insert(name.to_string(), sems.len()).is_some() {
                    return Err(err(line_no, format!("duplicate semaphore `{name}`")));
                }
                sems.push((name.to_string(), cap));
            }
            "proc" => {
                let rest = line["proc".len()..].trim_start();
                let Some((name, body)) = rest.split_once(':') else {
                    return Err(err(line_no, "expected `proc <name>: <actions>`"));
                };
                let name = name.trim();
                if !valid_name(name) {
                    return Err(err(line_no, format!("bad process name `{name}`")));
                }
                if procs.iter().any(|(_, p, _)| p == name) {
                    return Err(err(line_no, format!("duplicate process `{name}`")));
                }
                let mut actions = Vec::new();
                for tok in body.split_whitespace() {
                    let op = match tok.as_bytes()[0] {
                        b'P' => Op::P,
                        b'V' => Op::V,
                        _ => return Err(err(line_no, format!("bad action `{tok}`"))),
                    };
                    let sem = &tok[1..];
                    if !valid_name(sem) {
                        return Err(err(line_no, format!("bad action `{tok}`")));
                    }
                    actions.push((op, sem.to_string()));
                }
                if actions.is_empty() {
                    return Err(err(line_no, format!("process `{name}` has no actions")));
                }
                procs.push((line_no, name.to_string(), actions));
            }
            other => return Err(err(line_no, format!("unrecognised line starting with `{other}`"))),
        }
    }
    if !header {
        return Err(err(1, "missing header `pv v1`"));
    }
    let mut processes = Vec::new();
    for (line_no, name, actions) in procs {
        let mut held = vec![0i64; sems.len()];
        let mut resolved = Vec::new();
        for (op, s) in actions {
            let &sem = sem_index.get(&s).ok_or_else(|| err(line_no, format!("unknown semaphore `{s}`")))?;
            match op {
                Op::P => held[sem] += 1,
                Op::V => {
                    held[sem] -= 1;
                    if held[sem] < 0 {
                        return Err(err(line_no, format!("`V{s}` in process `{name}` has no matching `P{s}`")));
                    }
                }
            }
            resolved.push(Action { op, sem });
        }
        processes.push(Process { name, actions: resolved });
    }
    Ok(PvProgram { semaphores: sems, processes })
}

impl fmt::Display for PvProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pv v1")?;
        for (name, cap) in &self.semaphores {
            writeln!(f, "sem {name} {cap}")?;
        }
        for p in &self.processes {
            write!(f, "proc {}:", p.name)?;
            for a in &p.actions {
                let op = if a.op == Op::P { 'P' } else { 'V' };
                write!(f, " {op}{}", self.semaphores[a.sem].0)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A compiled program with its initial and final states. The final state
/// is absent when it is itself forbidden.
#[derive(Clone, Debug)]
pub struct CompiledPv {
    pub complex: PrecubicalSet,
    pub init: CellRef,
    pub final_state: Option<CellRef>,
}

impl CompiledPv {
    /// `pcs v1` text with the initial and final states as comments.
    pub fn to_pcs_text(&self) -> String {
        let body = crate::pcs::write_pcs(&self.complex);
        let (header, rest) = body.split_once('\n').expect("header line");
        let mut out = format!("{header}\n# init {}\n", self.complex.id(self.init));
        if let Some(f) = self.final_state {
            out.push_str(&format!("# final {}\n", self.complex.id(f)));
        }
        out.push_str(rest);
        out
    }
}

/// Per process and semaphore, the hold count at each position `0..=2k`:
/// even positions are vertices, odd ones the open edges between them.
fn hold_table(p: &PvProgram, proc: &Process) -> Vec<Vec<u32>> {
    let k = proc.actions.len();
    let mut at_vertex = vec![vec![0u32; k + 1]; p.semaphores.len()];
    for (j, a) in proc.actions.iter().enumerate() {
        for row in at_vertex.iter_mut() {
            row[j + 1] = row[j];
        }
        match a.op {
            Op::P => at_vertex[a.sem][j + 1] += 1,
            Op::V => at_vertex[a.sem][j + 1] -= 1,
        }
    }
    at_vertex
        .into_iter()
        .map(|v| {
            (0..=2 * k)
                .map(|pos| if pos.is_multiple_of(2) { v[pos / 2] } else { v[pos / 2].max(v[pos / 2 + 1]) })
                .collect()
        })
        .collect()
}

fn position_name(pos: usize) -> String {
    if pos.is_multiple_of(2) {
        (pos / 2).to_string()
    } else {
        format!("{}+", pos / 2)
    }
}

fn cell_name(positions: &[usize]) -> String {
    format!("({})", positions.iter().map(|&p| position_name(p)).collect::<Vec<_>>().join(","))
}

/// Semaphore indices in range, no `V` without a held `P`.
fn check_program(p: &PvProgram) -> Result<()> {
    for q in &p.processes {
        let mut held = vec![0u32; p.semaphores.len()];
        for a in &q.actions {
            let Some(h) = held.get_mut(a.sem) else {
                return Err(Error::Program(format!("process `{}` uses semaphore index {}", q.name, a.sem)));
            };
            match a.op {
                Op::P => *h += 1,
                Op::V if *h == 0 => {
                    let name = &p.semaphores[a.sem].0;
                    return Err(Error::Program(format!("`V{name}` in process `{}` has no matching `P{name}`", q.name)));
                }
                Op::V => *h -= 1,
            }
        }
    }
    Ok(())
}

/// Compiles a program into its state space.
pub fn compile_pv(p: &PvProgram) -> Result<CompiledPv> {
    if p.processes.len() > MAX_PROCESSES {
        return Err(Error::ResourceLimit(format!("{} processes (at most {MAX_PROCESSES})", p.processes.len())));
    }
    if let Some(q) = p.processes.iter().find(|q| q.actions.len() > MAX_ACTIONS) {
        return Err(Error::ResourceLimit(format!(
            "process `{}` has {} actions (at most {MAX_ACTIONS})",
            q.name,
            q.actions.len()
        )));
    }
    check_program(p)?;
    let holds: Vec<Vec<Vec<u32>>> = p.processes.iter().map(|q| hold_table(p, q)).collect();
    let sides: Vec<usize> = p.processes.iter().map(|q| 2 * q.actions.len() + 1).collect();
    let allowed = |pos: &[usize]| {
        p.semaphores.iter().enumerate().all(|(s, (_, cap))| {
            let total: u32 = pos.iter().enumerate().map(|(i, &x)| holds[i][s][x]).sum();
            total <= *cap
        })
    };

    let mut cells = Vec::new();
    let mut pos = vec![0usize; sides.len()];
    'odometer: loop {
        if allowed(&pos) {
            let dim = pos.iter().filter(|&&x| x % 2 == 1).count();
            let mut faces = Vec::with_capacity(2 * dim);
            for (i, &x) in pos.iter().enumerate().filter(|(_, &x)| x % 2 == 1) {
                for eps in 0..2 {
                    let mut f = pos.clone();
                    f[i] = x - 1 + 2 * eps;
                    debug_assert!(allowed(&f));
                    faces.push(cell_name(&f));
                }
            }
            cells.push((cell_name(&pos), dim, faces));
        }
        for i in (0..pos.len()).rev() {
            pos[i] += 1;
            if pos[i] < sides[i] {
                continue 'odometer;
            }
            pos[i] = 0;
        }
        break;
    }
    let complex = PrecubicalSet::from_cells(cells)?;
    let init = complex.vertex(&cell_name(&vec![0; sides.len()]))?;
    let last: Vec<usize> = sides.iter().map(|s| s - 1).collect();
    let final_state = complex.cell(&cell_name(&last));
    Ok(CompiledPv { complex, init, final_state })
}
