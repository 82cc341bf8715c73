//! Line-oriented text formats for algebras, posets, frames, filter
//! systems, and psi sequences. '#' starts a comment anywhere; blank
//! lines are skipped. Errors carry the file and 1-based line number.

use std::collections::BTreeMap;
use std::path::Path;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::filters::{FilterSystem, IlSequence, Rule};
use crate::modal::{ClosureKind, KripkeFrame};
use crate::parse::{parse_template, parse_term};
use crate::poset::FinitePoset;
use crate::signature::Signature;

struct Lines<'a> {
    file: String,
    entries: Vec<(usize, Vec<&'a str>, &'a str)>,
}

fn logical_lines<'a>(path: &Path, text: &'a str) -> Lines<'a> {
    let file = path.display().to_string();
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !tokens.is_empty() {
            entries.push((i + 1, tokens, line.trim()));
        }
    }
    Lines { file, entries }
}

fn bad(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::FileFormat {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_usize(file: &str, line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| bad(file, line, format!("{what} `{tok}` is not a number")))
}

/// algebra <name> / size <n> / labels k=v ... / op sym/arity + rows.
pub fn load_algebra(path: impl AsRef<Path>) -> Result<FiniteAlgebra> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let lines = logical_lines(path, &text);
    let file = &lines.file;
    let mut it = lines.entries.iter().peekable();

    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "empty file, expected `algebra <name>`"));
    };
    if tokens[0] != "algebra" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `algebra <name>`"));
    }
    let name = tokens[1].to_string();

    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "missing `size <n>`"));
    };
    if tokens[0] != "size" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `size <n>`"));
    }
    let size = parse_usize(file, *line, tokens[1], "size")?;
    if size == 0 {
        return Err(bad(file, *line, "size must be positive"));
    }

    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut symbols: Vec<(String, usize)> = Vec::new();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    while let Some((line, tokens, _)) = it.next() {
        match tokens[0] {
            "labels" => {
                for pair in &tokens[1..] {
                    let Some((k, v)) = pair.split_once('=') else {
                        return Err(bad(file, *line, format!("label `{pair}` is not elem=token")));
                    };
                    let k = parse_usize(file, *line, k, "label element")?;
                    if k >= size {
                        return Err(bad(file, *line, format!("label element {k} out of range")));
                    }
                    labels.insert(k, v.to_string());
                }
            }
            "op" => {
                if tokens.len() != 2 {
                    return Err(bad(file, *line, "expected `op <symbol>/<arity>`"));
                }
                let Some((sym, ar)) = tokens[1].split_once('/') else {
                    return Err(bad(file, *line, "expected `op <symbol>/<arity>`"));
                };
                let arity = parse_usize(file, *line, ar, "arity")?;
                let rows = size.pow(arity as u32);
                let mut table = vec![usize::MAX; rows];
                for _ in 0..rows {
                    let Some((rline, rtokens, _)) = it.next() else {
                        return Err(bad(
                            file,
                            *line,
                            format!("table for `{sym}` needs {rows} rows"),
                        ));
                    };
                    if rtokens.len() != arity + 1 {
                        return Err(bad(
                            file,
                            *rline,
                            format!("expected {} columns for `{sym}`", arity + 1),
                        ));
                    }
                    let mut idx = 0usize;
                    for tok in &rtokens[..arity] {
                        let v = parse_usize(file, *rline, tok, "argument")?;
                        if v >= size {
                            return Err(bad(file, *rline, format!("argument {v} out of range")));
                        }
                        idx = idx * size + v;
                    }
                    let val = parse_usize(file, *rline, rtokens[arity], "value")?;
                    if table[idx] != usize::MAX {
                        return Err(bad(file, *rline, "duplicate tuple row"));
                    }
                    table[idx] = val;
                }
                symbols.push((sym.to_string(), arity));
                tables.push(table);
            }
            other => {
                return Err(bad(file, *line, format!("unexpected directive `{other}`")));
            }
        }
    }
    let sig = Signature::new(symbols)?;
    let alg = FiniteAlgebra::new(name, sig, size, tables)?;
    alg.with_labels(labels)
}

/// The inverse of load_algebra; rows in lexicographic tuple order.
pub fn write_algebra(a: &FiniteAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", a.name()));
    out.push_str(&format!("size {}\n", a.size()));
    if !a.labels().is_empty() {
        out.push_str("labels");
        for (k, v) in a.labels() {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
    }
    for (sym, &(ref name, arity)) in a.signature().symbols().iter().enumerate() {
        out.push_str(&format!("op {name}/{arity}\n"));
        let table = a.table(sym);
        for (idx, &val) in table.iter().enumerate() {
            let mut args = vec![0usize; arity];
            let mut rest = idx;
            for slot in (0..arity).rev() {
                args[slot] = rest % a.size();
                rest /= a.size();
            }
            for arg in &args {
                out.push_str(&format!("{arg} "));
            }
            out.push_str(&format!("{val}\n"));
        }
    }
    out
}

/// poset <name> / size <n> / cover i j.
pub fn load_poset(path: impl AsRef<Path>) -> Result<FinitePoset> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let lines = logical_lines(path, &text);
    let file = &lines.file;
    let mut it = lines.entries.iter();

    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "empty file, expected `poset <name>`"));
    };
    if tokens[0] != "poset" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `poset <name>`"));
    }
    let name = tokens[1].to_string();
    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "missing `size <n>`"));
    };
    if tokens[0] != "size" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `size <n>`"));
    }
    let size = parse_usize(file, *line, tokens[1], "size")?;
    let mut covers = Vec::new();
    for (line, tokens, _) in it {
        if tokens[0] != "cover" || tokens.len() != 3 {
            return Err(bad(file, *line, "expected `cover <i> <j>`"));
        }
        covers.push((
            parse_usize(file, *line, tokens[1], "cover")?,
            parse_usize(file, *line, tokens[2], "cover")?,
        ));
    }
    FinitePoset::from_covers(name, size, &covers)
}

/// frame <name> / points <n> / edge i j / closure <kind>.
pub fn load_frame(path: impl AsRef<Path>) -> Result<KripkeFrame> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let lines = logical_lines(path, &text);
    let file = &lines.file;
    let mut it = lines.entries.iter();

    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "empty file, expected `frame <name>`"));
    };
    if tokens[0] != "frame" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `frame <name>`"));
    }
    let name = tokens[1].to_string();
    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "missing `points <n>`"));
    };
    if tokens[0] != "points" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `points <n>`"));
    }
    let points = parse_usize(file, *line, tokens[1], "points")?;
    let mut edges = Vec::new();
    let mut closure = ClosureKind::None;
    for (line, tokens, _) in it {
        match tokens[0] {
            "edge" if tokens.len() == 3 => {
                edges.push((
                    parse_usize(file, *line, tokens[1], "edge")?,
                    parse_usize(file, *line, tokens[2], "edge")?,
                ));
            }
            "closure" if tokens.len() == 2 => {
                closure = ClosureKind::parse(tokens[1]).ok_or_else(|| {
                    bad(file, *line, format!("unknown closure kind `{}`", tokens[1]))
                })?;
            }
            _ => return Err(bad(file, *line, "expected `edge <i> <j>` or `closure <kind>`")),
        }
    }
    KripkeFrame::new(name, points, &edges, closure)
}

/// system <name> / kind rule|heyting|modal|dmm / axiom t / rule t,.. => t.
pub fn load_system(path: impl AsRef<Path>, sig: &Signature) -> Result<FilterSystem> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let lines = logical_lines(path, &text);
    let file = &lines.file;
    let mut it = lines.entries.iter();

    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "empty file, expected `system <name>`"));
    };
    if tokens[0] != "system" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `system <name>`"));
    }
    let name = tokens[1].to_string();
    let Some((line, tokens, _)) = it.next() else {
        return Err(bad(file, 1, "missing `kind`"));
    };
    if tokens[0] != "kind" || tokens.len() != 2 {
        return Err(bad(file, *line, "expected `kind rule|heyting|modal|dmm`"));
    }
    match tokens[1] {
        "heyting" => return end_of_system(it.next(), file, FilterSystem::Builtin(crate::filters::Builtin::Heyting)),
        "modal" => return end_of_system(it.next(), file, FilterSystem::Builtin(crate::filters::Builtin::ModalGlobal)),
        "dmm" => return end_of_system(it.next(), file, FilterSystem::Builtin(crate::filters::Builtin::Dmm)),
        "rule" => {}
        other => return Err(bad(file, *line, format!("unknown kind `{other}`"))),
    }

    let mut axioms = Vec::new();
    let mut rules = Vec::new();
    for (line, tokens, rest) in it {
        match tokens[0] {
            "axiom" => {
                let body = rest.trim_start_matches("axiom").trim();
                axioms.push(
                    parse_term(sig, body)
                        .map_err(|e| bad(file, *line, e.to_string()))?,
                );
            }
            "rule" => {
                let body = rest.trim_start_matches("rule").trim();
                let Some((prem, conc)) = body.split_once("=>") else {
                    return Err(bad(file, *line, "rule needs `premises => conclusion`"));
                };
                let mut premises = Vec::new();
                for p in split_top_level(prem) {
                    premises.push(
                        parse_term(sig, p.trim())
                            .map_err(|e| bad(file, *line, e.to_string()))?,
                    );
                }
                let conclusion = parse_term(sig, conc.trim())
                    .map_err(|e| bad(file, *line, e.to_string()))?;
                rules.push(Rule {
                    premises,
                    conclusion,
                });
            }
            other => return Err(bad(file, *line, format!("unexpected directive `{other}`"))),
        }
    }
    Ok(FilterSystem::RuleClosure {
        name,
        axioms,
        rules,
    })
}

fn end_of_system(
    next: Option<&(usize, Vec<&str>, &str)>,
    file: &str,
    sys: FilterSystem,
) -> Result<FilterSystem> {
    match next {
        None => Ok(sys),
        Some((line, _, _)) => Err(bad(file, *line, "builtin kinds take no further directives")),
    }
}

/// Splits on commas not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// conj <symbol> / psi n := t;t / psi <k> := t;t. Terms in a `psi n`
/// template may use the vconj marker for the fold v1∧...∧vn; numeric
/// entries are plain terms over v1..vk.
pub fn load_psi(path: impl AsRef<Path>, sig: &Signature) -> Result<IlSequence> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let lines = logical_lines(path, &text);
    let file = &lines.file;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "psi".to_string());
    let mut seq = IlSequence::new(stem);
    for (line, tokens, rest) in &lines.entries {
        match tokens[0] {
            "conj" if tokens.len() == 2 => {
                seq.conj_symbol = tokens[1].to_string();
            }
            "psi" => {
                let body = rest.trim_start_matches("psi").trim();
                let Some((head, terms)) = body.split_once(":=") else {
                    return Err(bad(file, *line, "expected `psi <n> := <term>;...`"));
                };
                let head = head.trim();
                let mut parsed = Vec::new();
                for t in terms.split(';') {
                    let t = t.trim();
                    if t.is_empty() {
                        continue;
                    }
                    let term = if head == "n" {
                        parse_template(sig, t)
                    } else {
                        parse_term(sig, t)
                    }
                    .map_err(|e| bad(file, *line, e.to_string()))?;
                    parsed.push(term);
                }
                if parsed.is_empty() {
                    return Err(bad(file, *line, "psi entry needs at least one term"));
                }
                if head == "n" {
                    seq.template = Some(parsed);
                } else {
                    let k = parse_usize(file, *line, head, "psi arity")?;
                    if k == 0 {
                        return Err(bad(file, *line, "psi arity must be positive"));
                    }
                    seq.entries.insert(k, parsed);
                }
            }
            other => return Err(bad(file, *line, format!("unexpected directive `{other}`"))),
        }
    }
    if seq.template.is_none() && seq.entries.is_empty() {
        return Err(bad(file, 1, "no psi entries"));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demorgan::{named, NamedDmm};

    fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("aal-file-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    #[test]
    fn algebra_round_trip() {
        let c4 = named(NamedDmm::C4);
        let text = write_algebra(&c4);
        let p = tmp("c4.alg", &text);
        let back = load_algebra(&p).unwrap();
        assert_eq!(back, c4);
        assert_eq!(write_algebra(&back), text);
    }

    #[test]
    fn algebra_errors_carry_line_numbers() {
        let p = tmp(
            "bad.alg",
            "algebra x\nsize 2\nop meet/2\n0 0 0\n0 1 0\n1 0 0\n1 1 9\n",
        );
        match load_algebra(&p) {
            Err(Error::BadTable { .. }) => {}
            other => panic!("expected table error, got {other:?}"),
        }
        let p = tmp("bad2.alg", "algebra x\nsize 2\nop meet/2\n0 0 0\n");
        match load_algebra(&p) {
            Err(Error::FileFormat { line: 3, .. }) => {}
            other => panic!("expected row-count error, got {other:?}"),
        }
    }

    #[test]
    fn poset_and_frame_files() {
        let p = tmp("fork.poset", "poset fork\nsize 3\ncover 0 1\ncover 0 2\n");
        let poset = load_poset(&p).unwrap();
        assert!(poset.leq(0, 2));
        let f = tmp(
            "fork.frame",
            "frame fork\npoints 3\nedge 0 1\nedge 0 2\nclosure preorder\n",
        );
        let frame = load_frame(&f).unwrap();
        assert!(frame.sees(0, 0));
        assert!(frame.sees(0, 2));
    }

    #[test]
    fn system_and_psi_files() {
        let c4 = named(NamedDmm::C4);
        let sys = tmp(
            "mp.system",
            "system mp\nkind rule\naxiom e\nrule v1, neg(fuse(v1, neg(v2))) => v2\n",
        );
        let loaded = load_system(&sys, c4.signature()).unwrap();
        match &loaded {
            FilterSystem::RuleClosure { axioms, rules, .. } => {
                assert_eq!(axioms.len(), 1);
                assert_eq!(rules.len(), 1);
                assert_eq!(rules[0].premises.len(), 2);
            }
            _ => panic!("expected rule closure"),
        }
        let psi = tmp(
            "rt.psi",
            "conj meet\npsi n := neg(fuse(vconj(e), neg(meet(neg(e), neg(fuse(neg(e), neg(e)))))))\n",
        );
        let seq = load_psi(&psi, c4.signature()).unwrap();
        let one = seq.psi(1).unwrap();
        assert_eq!(
            one[0].to_string(),
            "neg(fuse(meet(v1, e), neg(meet(neg(e), neg(fuse(neg(e), neg(e)))))))"
        );
        let builtin = crate::filters::IlSequence::rt_builtin();
        assert_eq!(
            builtin.psi(2).unwrap()[0].to_string(),
            seq.psi(2).unwrap()[0].to_string()
        );
    }
}
