//! Canonical text formats.
//!
//! Every file is a sequence of `key: value` entries, optionally grouped under
//! `[section]` headers. A value may continue on the following indented lines
//! (matrix rows, relation lists). Blank lines and `#` comments are ignored.
//! Serialization is canonical: fixed key order, single spaces, `\n` endings.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::algebra::{Algebra, Presentation, Relation};
use crate::bimodule::NFoldBimodule;
use crate::equiv::{EquivalenceWitness, PicardElement};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::smc::SmcStructure;

#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: String,
    value: String,
    value_col: usize,
    block: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, Default)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn parse_doc(text: &str) -> Result<Vec<Section>> {
    let mut sections = vec![Section::default()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let trimmed = content.trim();
        if indent > 0 {
            let sec = sections.last_mut().expect("root section");
            let Some(entry) = sec.entries.last_mut() else {
                return Err(perr(line, 1, "indented line outside any entry"));
            };
            entry.block.push((line, indent + 1, trimmed.to_string()));
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(perr(line, trimmed.len(), "unterminated section header"));
            };
            sections.push(Section { name: name.trim().to_string(), line, entries: vec![] });
            continue;
        }
        let Some(colon) = trimmed.find(':') else {
            return Err(perr(line, 1, "expected `key: value`"));
        };
        let key = trimmed[..colon].trim().to_string();
        if key.is_empty() {
            return Err(perr(line, 1, "empty key"));
        }
        let after = &trimmed[colon + 1..];
        let value = after.trim().to_string();
        let value_col = colon + 2 + (after.len() - after.trim_start().len());
        sections.last_mut().expect("root section").entries.push(Entry { line, key, value, value_col, block: vec![] });
    }
    Ok(sections)
}

struct Reader<'a> {
    section: &'a Section,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(section: &'a Section) -> Self {
        Reader { section, pos: 0 }
    }

    fn here(&self) -> usize {
        self.section.entries.get(self.pos).map(|e| e.line).unwrap_or(self.section.line)
    }

    fn expect(&mut self, key: &str) -> Result<&'a Entry> {
        match self.section.entries.get(self.pos) {
            Some(e) if e.key == key => {
                self.pos += 1;
                Ok(e)
            }
            Some(e) => Err(perr(e.line, 1, format!("expected `{key}`, found `{}`", e.key))),
            None => Err(perr(self.here(), 1, format!("missing `{key}`"))),
        }
    }

    fn optional(&mut self, key: &str) -> Option<&'a Entry> {
        match self.section.entries.get(self.pos) {
            Some(e) if e.key == key => {
                self.pos += 1;
                Some(e)
            }
            _ => None,
        }
    }

    fn finish(&self) -> Result<()> {
        match self.section.entries.get(self.pos) {
            Some(e) => Err(perr(e.line, 1, format!("unexpected `{}`", e.key))),
            None => Ok(()),
        }
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((base_col + st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((base_col + st, &s[st..]));
    }
    out
}

fn parse_usize(tok: &str, line: usize, col: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| perr(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

fn parse_elems(s: &str, line: usize, col: usize, q: usize) -> Result<Vec<Elem>> {
    tokens(s, col)
        .into_iter()
        .map(|(c, t)| {
            let v = parse_usize(t, line, c)?;
            if v >= q {
                return Err(perr(line, c, format!("field code {v} out of range for a field of order {q}")));
            }
            Ok(v as Elem)
        })
        .collect()
}

fn parse_row(s: &str, line: usize, col: usize, q: usize, len: usize) -> Result<Vec<Elem>> {
    let v = parse_elems(s, line, col, q)?;
    if v.len() != len {
        return Err(perr(line, col, format!("expected {len} entries, found {}", v.len())));
    }
    Ok(v)
}

fn parse_matrix(e: &Entry, q: usize) -> Result<Matrix> {
    let Some((r, c)) = e.value.split_once('x') else {
        return Err(perr(e.line, e.value_col, "expected a size `ROWSxCOLS`"));
    };
    let rows = parse_usize(r.trim(), e.line, e.value_col)?;
    let cols = parse_usize(c.trim(), e.line, e.value_col + r.len() + 1)?;
    if e.block.len() != if cols == 0 { 0 } else { rows } {
        return Err(perr(e.line, 1, format!("`{}` declares {rows} rows, found {}", e.key, e.block.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (line, col, text) in &e.block {
        data.extend(parse_row(text, *line, *col, q, cols)?);
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

fn write_matrix(out: &mut String, key: &str, m: &Matrix) {
    let _ = writeln!(out, "{key}: {}x{}", m.rows(), m.cols());
    if m.cols() == 0 {
        return;
    }
    for r in 0..m.rows() {
        let _ = writeln!(out, "  {}", join(m.row(r)));
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn section<'a>(doc: &'a [Section], name: &str) -> Result<&'a Section> {
    doc.iter()
        .find(|s| s.name == name)
        .ok_or_else(|| perr(doc.last().map(|s| s.line).unwrap_or(1), 1, format!("missing section [{name}]")))
}

fn ensure_known_sections(doc: &[Section], allowed: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in doc {
        if s.name.is_empty() {
            continue;
        }
        if !allowed.contains(&s.name) {
            return Err(perr(s.line, 1, format!("unknown section [{}]", s.name)));
        }
        if !seen.insert(s.name.clone()) {
            return Err(perr(s.line, 1, format!("duplicate section [{}]", s.name)));
        }
    }
    Ok(())
}

fn wrap_semantic(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        Error::Verification(msg) => Error::Verification(format!("section at line {line}: {msg}")),
        other => perr(line, 1, other.to_string()),
    }
}

// ---------------------------------------------------------------- algebra

fn word_text(w: &[usize]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn write_algebra_body(out: &mut String, r: &Algebra) {
    let k = r.field();
    let _ = writeln!(out, "field: {}^{}", k.characteristic(), k.degree());
    let _ = writeln!(out, "dim: {}", r.dim());
    let _ = writeln!(out, "names: {}", r.names().join(" "));
    let _ = writeln!(out, "unit: {}", join(r.unit()));
    let _ = writeln!(out, "mul: {}x{}", r.dim() * r.dim(), r.dim());
    for v in r.structure_constants() {
        let _ = writeln!(out, "  {}", join(v));
    }
    if let Some(p) = r.presentation() {
        let _ = writeln!(out, "generators: {}", join(&p.generators));
        let _ = writeln!(out, "relations: {}", p.relations.len());
        for rel in &p.relations {
            let terms: Vec<String> = rel.iter().map(|(c, w)| format!("{c}*{}", word_text(w))).collect();
            let _ = writeln!(out, "  {}", terms.join(" + "));
        }
    }
}

pub fn algebra_to_text(r: &Algebra) -> String {
    let mut out = String::new();
    write_algebra_body(&mut out, r);
    out
}

fn parse_field(e: &Entry) -> Result<Arc<FiniteField>> {
    let Some((p, x)) = e.value.split_once('^') else {
        return Err(perr(e.line, e.value_col, "expected `p^e`"));
    };
    let p = parse_usize(p.trim(), e.line, e.value_col)?;
    let x = parse_usize(x.trim(), e.line, e.value_col + 2)?;
    FiniteField::new(p, x).map(Arc::new).map_err(|err| perr(e.line, e.value_col, err.to_string()))
}

fn parse_relation(text: &str, line: usize, col: usize, q: usize, ngens: usize) -> Result<Relation> {
    let mut rel = Vec::new();
    let mut offset = 0;
    for term in text.split('+') {
        let tcol = col + offset + (term.len() - term.trim_start().len());
        offset += term.len() + 1;
        let term = term.trim();
        let Some((c, w)) = term.split_once('*') else {
            return Err(perr(line, tcol, "expected a term `coefficient*word`"));
        };
        let c = parse_usize(c.trim(), line, tcol)?;
        if c >= q {
            return Err(perr(line, tcol, format!("coefficient {c} out of range")));
        }
        let w = w.trim();
        let word = if w == "e" {
            vec![]
        } else {
            w.split('.')
                .map(|g| {
                    let g = parse_usize(g, line, tcol)?;
                    if g >= ngens {
                        return Err(perr(line, tcol, format!("unknown generator {g}")));
                    }
                    Ok(g)
                })
                .collect::<Result<Vec<_>>>()?
        };
        rel.push((c as Elem, word));
    }
    Ok(rel)
}

fn read_algebra(sec: &Section) -> Result<Algebra> {
    let mut rd = Reader::new(sec);
    let fe = rd.expect("field")?;
    let k = parse_field(fe)?;
    let q = k.order();
    let de = rd.expect("dim")?;
    let d = parse_usize(&de.value, de.line, de.value_col)?;
    let ne = rd.expect("names")?;
    let names: Vec<String> = ne.value.split_whitespace().map(String::from).collect();
    if names.len() != d {
        return Err(perr(ne.line, ne.value_col, format!("expected {d} names, found {}", names.len())));
    }
    let ue = rd.expect("unit")?;
    let unit = parse_row(&ue.value, ue.line, ue.value_col, q, d)?;
    let me = rd.expect("mul")?;
    let mul = parse_matrix(me, q)?;
    if mul.rows() != d * d || mul.cols() != d {
        return Err(perr(me.line, me.value_col, format!("`mul` must be {}x{d}", d * d)));
    }
    let mul_rows: Vec<Vec<Elem>> = (0..d * d).map(|i| mul.row(i).to_vec()).collect();
    let presentation = match rd.optional("generators") {
        None => None,
        Some(ge) => {
            let generators = tokens(&ge.value, ge.value_col)
                .into_iter()
                .map(|(c, t)| parse_usize(t, ge.line, c))
                .collect::<Result<Vec<_>>>()?;
            let re = rd.expect("relations")?;
            let n = parse_usize(&re.value, re.line, re.value_col)?;
            if re.block.len() != n {
                return Err(perr(re.line, 1, format!("`relations` declares {n} lines, found {}", re.block.len())));
            }
            let relations = re
                .block
                .iter()
                .map(|(l, c, t)| parse_relation(t, *l, *c, q, generators.len()))
                .collect::<Result<Vec<_>>>()?;
            Some(Presentation { generators, relations })
        }
    };
    rd.finish()?;
    Algebra::new(k, mul_rows, unit, names, presentation).map_err(|e| wrap_semantic(fe.line, e))
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let doc = parse_doc(text)?;
    ensure_known_sections(&doc, &[])?;
    read_algebra(&doc[0])
}

// --------------------------------------------------------------- bimodules

fn write_bimodule_body(out: &mut String, m: &NFoldBimodule) {
    let _ = writeln!(out, "fold: {}", m.fold());
    let _ = writeln!(out, "dim: {}", m.dim());
    if m.fold() > 0 {
        let _ = writeln!(out, "labels: {}", m.labels().join(" "));
    }
    for (i, t) in m.left_tables().iter().enumerate() {
        write_matrix(out, &format!("left[{i}]"), t);
    }
    for (s, slot) in m.right_tables().iter().enumerate() {
        for (i, t) in slot.iter().enumerate() {
            write_matrix(out, &format!("right[{}][{i}]", s + 1), t);
        }
    }
}

fn read_bimodule(sec: &Section, rd: &mut Reader, r: &Arc<Algebra>) -> Result<NFoldBimodule> {
    let q = r.field().order();
    let fe = rd.expect("fold")?;
    let fold = parse_usize(&fe.value, fe.line, fe.value_col)?;
    let de = rd.expect("dim")?;
    let dim = parse_usize(&de.value, de.line, de.value_col)?;
    let labels: Option<Vec<String>> = if fold > 0 {
        let le = rd.expect("labels")?;
        let l: Vec<String> = le.value.split_whitespace().map(String::from).collect();
        if l.len() != fold {
            return Err(perr(le.line, le.value_col, format!("expected {fold} labels")));
        }
        Some(l)
    } else {
        None
    };
    let mut read_table = |key: String| -> Result<Matrix> {
        let e = rd.expect(&key)?;
        let m = parse_matrix(e, q)?;
        if m.rows() != dim || m.cols() != dim {
            return Err(perr(e.line, e.value_col, format!("`{key}` must be {dim}x{dim}")));
        }
        Ok(m)
    };
    let left = (0..r.dim()).map(|i| read_table(format!("left[{i}]"))).collect::<Result<Vec<_>>>()?;
    let right = (0..fold)
        .map(|s| (0..r.dim()).map(|i| read_table(format!("right[{}][{i}]", s + 1))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = NFoldBimodule::new(r.clone(), dim, left, right).map_err(|e| wrap_semantic(sec.line.max(fe.line), e))?;
    Ok(match labels {
        Some(l) => m.with_labels(l),
        None => m,
    })
}

/// Module file: `algebra: <path>` followed by the tables.
pub fn bimodule_to_text(m: &NFoldBimodule, algebra_path: &str) -> String {
    let mut out = format!("algebra: {algebra_path}\n");
    write_bimodule_body(&mut out, m);
    out
}

/// Parse a module file; the algebra path is resolved relative to `base`.
pub fn parse_bimodule(text: &str, base: &Path) -> Result<(NFoldBimodule, PathBuf)> {
    let doc = parse_doc(text)?;
    ensure_known_sections(&doc, &[])?;
    let mut rd = Reader::new(&doc[0]);
    let ae = rd.expect("algebra")?;
    let path = base.join(&ae.value);
    let r = Arc::new(load_algebra(&path).map_err(|e| perr(ae.line, ae.value_col, format!("{}: {e}", path.display())))?);
    let m = read_bimodule(&doc[0], &mut rd, &r)?;
    rd.finish()?;
    Ok((m, path))
}

pub fn parse_bimodule_with(text: &str, r: &Arc<Algebra>) -> Result<NFoldBimodule> {
    let doc = parse_doc(text)?;
    let mut rd = Reader::new(&doc[0]);
    rd.optional("algebra");
    let m = read_bimodule(&doc[0], &mut rd, r)?;
    rd.finish()?;
    Ok(m)
}

// -------------------------------------------------------------- structures

fn write_structure_sections(out: &mut String, s: &SmcStructure, prefix: &str) {
    let _ = writeln!(out, "[{prefix}algebra]");
    write_algebra_body(out, s.algebra());
    let _ = writeln!(out, "[{prefix}lambda]");
    write_bimodule_body(out, s.lambda());
    let _ = writeln!(out, "[{prefix}unit]");
    write_bimodule_body(out, s.unit());
    let _ = writeln!(out, "[{prefix}maps]");
    write_matrix(out, "a", s.assoc());
    write_matrix(out, "l", s.unit_map());
    write_matrix(out, "c", s.comm());
}

fn structure_section_names(prefix: &str) -> Vec<String> {
    ["algebra", "lambda", "unit", "maps"].iter().map(|n| format!("{prefix}{n}")).collect()
}

fn read_structure(doc: &[Section], prefix: &str) -> Result<SmcStructure> {
    let asec = section(doc, &format!("{prefix}algebra"))?;
    let r = Arc::new(read_algebra(asec)?);
    let lsec = section(doc, &format!("{prefix}lambda"))?;
    let mut rd = Reader::new(lsec);
    let lambda = Arc::new(read_bimodule(lsec, &mut rd, &r)?);
    rd.finish()?;
    let usec = section(doc, &format!("{prefix}unit"))?;
    let mut rd = Reader::new(usec);
    let unit = Arc::new(read_bimodule(usec, &mut rd, &r)?);
    rd.finish()?;
    let msec = section(doc, &format!("{prefix}maps"))?;
    let q = r.field().order();
    let mut rd = Reader::new(msec);
    let a = parse_matrix(rd.expect("a")?, q)?;
    let l = parse_matrix(rd.expect("l")?, q)?;
    let c = parse_matrix(rd.expect("c")?, q)?;
    rd.finish()?;
    SmcStructure::from_parts(lambda, unit, a, l, c).map_err(|e| wrap_semantic(msec.line, e))
}

/// Self-contained structure certificate: algebra, `Lambda`, `K` and the maps.
pub fn structure_to_text(s: &SmcStructure) -> String {
    let mut out = String::new();
    write_structure_sections(&mut out, s, "");
    out
}

pub fn parse_structure(text: &str) -> Result<SmcStructure> {
    let doc = parse_doc(text)?;
    if let Some(e) = doc[0].entries.first() {
        return Err(perr(e.line, 1, "entries before the first section"));
    }
    ensure_known_sections(&doc, &structure_section_names(""))?;
    read_structure(&doc, "")
}

// ------------------------------------------------------------------- hopf

pub fn hopf_to_text(h: &HopfAlgebra, algebra_path: &str) -> String {
    let d = h.algebra().dim();
    let mut out = format!("algebra: {algebra_path}\n");
    let _ = writeln!(out, "delta: {d}x{}", d * d);
    for row in h.delta_table() {
        let _ = writeln!(out, "  {}", join(row));
    }
    let _ = writeln!(out, "counit: {}", join(h.counit()));
    write_matrix(&mut out, "antipode", h.antipode());
    out
}

pub fn parse_hopf(text: &str, base: &Path) -> Result<HopfAlgebra> {
    let doc = parse_doc(text)?;
    ensure_known_sections(&doc, &[])?;
    let mut rd = Reader::new(&doc[0]);
    let ae = rd.expect("algebra")?;
    let path = base.join(&ae.value);
    let r = Arc::new(load_algebra(&path).map_err(|e| perr(ae.line, ae.value_col, format!("{}: {e}", path.display())))?);
    let q = r.field().order();
    let d = r.dim();
    let de = rd.expect("delta")?;
    let delta = parse_matrix(de, q)?;
    if delta.rows() != d || delta.cols() != d * d {
        return Err(perr(de.line, de.value_col, format!("`delta` must be {d}x{}", d * d)));
    }
    let ce = rd.expect("counit")?;
    let counit = parse_row(&ce.value, ce.line, ce.value_col, q, d)?;
    let se = rd.expect("antipode")?;
    let antipode = parse_matrix(se, q)?;
    rd.finish()?;
    let rows = (0..d).map(|i| delta.row(i).to_vec()).collect();
    HopfAlgebra::new(r, rows, counit, antipode).map_err(|e| wrap_semantic(de.line, e))
}

// --------------------------------------------------------------- witnesses

fn write_picard(out: &mut String, p: &PicardElement) {
    let _ = writeln!(out, "[picard.x]");
    write_bimodule_body(out, &p.x);
    let _ = writeln!(out, "[picard.y]");
    write_bimodule_body(out, &p.y);
}

/// Equivalence certificate: both structures, the invertible bimodule with its
/// inverse, and the maps `xy`, `yx`, `eta`, `m`.
pub fn witness_to_text(source: &SmcStructure, target: &SmcStructure, w: &EquivalenceWitness) -> String {
    let mut out = String::new();
    write_structure_sections(&mut out, source, "source.");
    write_structure_sections(&mut out, target, "target.");
    write_picard(&mut out, &w.picard);
    let _ = writeln!(out, "[witness]");
    write_matrix(&mut out, "xy", &w.picard.xy);
    write_matrix(&mut out, "yx", &w.picard.yx);
    write_matrix(&mut out, "eta", &w.eta);
    write_matrix(&mut out, "m", &w.m);
    out
}

pub fn parse_witness(text: &str) -> Result<(SmcStructure, SmcStructure, EquivalenceWitness)> {
    let doc = parse_doc(text)?;
    let mut allowed = structure_section_names("source.");
    allowed.extend(structure_section_names("target."));
    allowed.extend(["picard.x", "picard.y", "witness"].map(String::from));
    ensure_known_sections(&doc, &allowed)?;
    let source = read_structure(&doc, "source.")?;
    let target = read_structure(&doc, "target.")?;
    let r = source.algebra().clone();
    let q = r.field().order();
    let bim = |name: &str| -> Result<Arc<NFoldBimodule>> {
        let sec = section(&doc, name)?;
        let mut rd = Reader::new(sec);
        let m = read_bimodule(sec, &mut rd, &r)?;
        rd.finish()?;
        Ok(Arc::new(m))
    };
    let (x, y) = (bim("picard.x")?, bim("picard.y")?);
    let ws = section(&doc, "witness")?;
    let mut rd = Reader::new(ws);
    let xy = parse_matrix(rd.expect("xy")?, q)?;
    let yx = parse_matrix(rd.expect("yx")?, q)?;
    let eta = parse_matrix(rd.expect("eta")?, q)?;
    let m = parse_matrix(rd.expect("m")?, q)?;
    rd.finish()?;
    Ok((source, target, EquivalenceWitness { picard: PicardElement { x, y, xy, yx }, eta, m }))
}

// -------------------------------------------------------------------- files

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::Io)
}

pub fn load_algebra(path: &Path) -> Result<Algebra> {
    parse_algebra(&read_file(path)?)
}

pub fn load_structure(path: &Path) -> Result<SmcStructure> {
    parse_structure(&read_file(path)?)
}

pub fn load_bimodule(path: &Path) -> Result<NFoldBimodule> {
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(parse_bimodule(&read_file(path)?, base)?.0)
}

pub fn load_hopf(path: &Path) -> Result<HopfAlgebra> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_hopf(&read_file(path)?, base)
}

/// Write through a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().to_string()).unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, matrix_algebra, quotient_algebra};
    use crate::constructions;

    fn f2x2() -> Arc<Algebra> {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap())
    }

    #[test]
    fn algebra_round_trip() {
        let k3 = Arc::new(FiniteField::new(3, 1).unwrap());
        let k4 = Arc::new(FiniteField::new(2, 2).unwrap());
        for r in [
            (*f2x2()).clone(),
            group_algebra(k3, &[2]).unwrap(),
            matrix_algebra(k4.clone(), 2).unwrap(),
            quotient_algebra(k4, &[0, 0, 1]).unwrap(),
        ] {
            let text = algebra_to_text(&r);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(algebra_to_text(&back), text);
        }
    }

    #[test]
    fn structure_round_trip() {
        let r = f2x2();
        let s = constructions::hopf_structure(&HopfAlgebra::h1(r.field().clone()).unwrap()).unwrap();
        let text = structure_to_text(&s);
        let back = parse_structure(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(structure_to_text(&back), text);
    }

    #[test]
    fn bimodule_round_trip() {
        let r = f2x2();
        let m = NFoldBimodule::regular(r.clone(), 2);
        let text = bimodule_to_text(&m, "f2x2.alg");
        assert_eq!(parse_bimodule_with(&text, &r).unwrap(), m);
    }

    #[test]
    fn errors_carry_positions() {
        let text = "field: 2^1\ndim: 2\nnames: 1 x\nunit: 1 0\nmul: 4x2\n  1 0\n  0 1\n  0 7\n  0 0\n";
        match parse_algebra(text) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (8, 5)),
            other => panic!("{other:?}"),
        }
        match parse_algebra("field: 2^1\nsize: 2\n") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (2, 1));
                assert!(msg.contains("dim"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_unit_is_rejected() {
        let text = "field: 2^1\ndim: 2\nnames: 1 x\nunit: 1 0\nmul: 4x2\n  1 0\n  0 1\n  1 0\n  1 1\n";
        assert!(matches!(parse_algebra(text), Err(Error::Parse { .. })));
    }
}
