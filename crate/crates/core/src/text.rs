//! Line-oriented text formats for spaces, paths, open sets, test functions,
//! maps and bi-parameter grids. Numbers use the `Scalar` literal grammar
//! (`3`, `-1/2`, `1/2 + 3/4 r2`). Blank lines and `#` comments are skipped.
//! Parse errors carry 1-based line and column numbers.

use crate::constructs::BiParamMap;
use crate::dfun::{AffineForm, Cell, TestFunction};
use crate::dspace::{DSpace, GeneratorFamily, MapCell, PathPredicate, PlMap, Presentation, Schema};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, Axis, AxisBox, OpenSet, PlPath};

struct Ctx<'a> {
    no: usize,
    line: &'a str,
}

impl<'a> Ctx<'a> {
    /// `at` must be a subslice of the line.
    fn err(&self, at: &str, msg: impl Into<String>) -> Error {
        let offset = (at.as_ptr() as usize).saturating_sub(self.line.as_ptr() as usize);
        let col = self.line[..offset.min(self.line.len())].chars().count() + 1;
        Error::parse(self.no, col, msg)
    }

    fn wrap<T>(&self, at: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.err(at, other.to_string()),
        })
    }
}

/// Content lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = Ctx<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            None
        } else {
            Some(Ctx { no: i + 1, line: content })
        }
    })
}

fn key_value<'a>(cx: &Ctx<'a>) -> Option<(&'a str, &'a str)> {
    let (k, v) = cx.line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

enum Term<'a> {
    Atom(&'a str),
    Call(&'a str, Vec<Term<'a>>),
}

/// Splits at `sep` outside parentheses and brackets.
fn split_top<'a>(cx: &Ctx<'a>, s: &'a str, sep: char) -> Result<Vec<&'a str>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(cx.err(&s[i..], "unbalanced ')'"));
                }
            }
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(cx.err(s, "unbalanced '('"));
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn term<'a>(cx: &Ctx<'a>, s: &'a str) -> Result<Term<'a>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(cx.err(s, "expected a value"));
    }
    let Some(open) = s.find('(') else {
        return Ok(Term::Atom(s));
    };
    if !s.ends_with(')') {
        return Err(cx.err(s, "expected ')' at the end"));
    }
    let name = s[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(cx.err(s, format!("bad name '{name}'")));
    }
    let inner = &s[open + 1..s.len() - 1];
    let args = split_top(cx, inner, ',')?
        .into_iter()
        .map(|a| term(cx, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::Call(name, args))
}

fn scalar(cx: &Ctx, s: &str) -> Result<Scalar> {
    s.trim()
        .parse()
        .map_err(|_| cx.err(s.trim(), format!("bad number '{}'", s.trim())))
}

fn scalars(cx: &Ctx, s: &str) -> Result<Vec<Scalar>> {
    split_top(cx, s, ',')?.into_iter().map(|x| scalar(cx, x)).collect()
}

fn boolean(cx: &Ctx, s: &str) -> Result<bool> {
    match s.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(cx.err(s.trim(), format!("expected true or false, found '{other}'"))),
    }
}

fn index(cx: &Ctx, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| cx.err(s.trim(), format!("expected an index, found '{}'", s.trim())))
}

fn atom<'a>(cx: &Ctx<'a>, t: &Term<'a>, what: &str) -> Result<&'a str> {
    match t {
        Term::Atom(a) => Ok(a),
        Term::Call(name, _) => Err(cx.err(name, format!("expected {what}"))),
    }
}

fn arity(cx: &Ctx, name: &str, args: &[Term], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(cx.err(name, format!("{name} takes {n} arguments, found {}", args.len())))
    }
}

pub fn parse_ambient_str(s: &str) -> Result<Ambient> {
    let cx = Ctx { no: 1, line: s };
    ambient(&cx, s)
}

fn ambient(cx: &Ctx, s: &str) -> Result<Ambient> {
    let mut axes = Vec::new();
    for part in s.split(" x ") {
        let (name, args) = match term(cx, part)? {
            Term::Call(name, args) if args.len() == 1 => (name, args),
            _ => return Err(cx.err(part.trim(), "expected euclidean(n) or torus(n)")),
        };
        let n = index(cx, atom(cx, &args[0], "a dimension")?)?;
        let axis = match name {
            "euclidean" => Axis::Line,
            "torus" => Axis::Circle,
            other => return Err(cx.err(name, format!("unknown ambient '{other}'"))),
        };
        axes.extend(std::iter::repeat_n(axis, n));
    }
    cx.wrap(s, Ambient::from_axes(axes))
}

fn predicate(cx: &Ctx, t: &Term) -> Result<PathPredicate> {
    let p = match t {
        Term::Atom(a) => match *a {
            "any" => PathPredicate::Any,
            "constant" => PathPredicate::Constant,
            "nondecreasing" => PathPredicate::Nondecreasing,
            "rational_slope" => PathPredicate::RationalSlope,
            "avoid_zero" => PathPredicate::AvoidZero,
            "half_line" => PathPredicate::HalfLine,
            other => return Err(cx.err(a, format!("unknown predicate '{other}'"))),
        },
        Term::Call(name, args) => match *name {
            "along" => {
                arity(cx, name, args, 3)?;
                PathPredicate::Along {
                    axis: index(cx, atom(cx, &args[0], "an axis")?)?,
                    monotone: boolean(cx, atom(cx, &args[1], "a boolean")?)?,
                    rational_level: boolean(cx, atom(cx, &args[2], "a boolean")?)?,
                }
            }
            "piecewise_axis" => {
                arity(cx, name, args, 1)?;
                PathPredicate::PiecewiseAxis {
                    monotone: boolean(cx, atom(cx, &args[0], "a boolean")?)?,
                }
            }
            "harp" => {
                let mut chords = Vec::new();
                for a in args {
                    match a {
                        Term::Call("chord", ab) if ab.len() == 2 => chords.push((
                            scalar(cx, atom(cx, &ab[0], "a number")?)?,
                            scalar(cx, atom(cx, &ab[1], "a number")?)?,
                        )),
                        _ => return Err(cx.err(name, "harp takes chord(a, b) arguments")),
                    }
                }
                PathPredicate::Harp { chords }
            }
            "rev" => {
                arity(cx, name, args, 1)?;
                PathPredicate::Reversed {
                    inner: Box::new(predicate(cx, &args[0])?),
                }
            }
            "product" => {
                arity(cx, name, args, 3)?;
                PathPredicate::Product {
                    split: index(cx, atom(cx, &args[0], "a split index")?)?,
                    left: Box::new(predicate(cx, &args[1])?),
                    right: Box::new(predicate(cx, &args[2])?),
                }
            }
            "glue" => PathPredicate::Glue {
                legs: args.iter().map(|a| predicate(cx, a)).collect::<Result<_>>()?,
            },
            other => return Err(cx.err(name, format!("unknown predicate '{other}'"))),
        },
    };
    Ok(p)
}

pub fn parse_predicate_str(s: &str) -> Result<PathPredicate> {
    let cx = Ctx { no: 1, line: s };
    predicate(&cx, &term(&cx, s)?)
}

fn schema(cx: &Ctx, t: &Term) -> Result<Schema> {
    match t {
        Term::Atom("const") => Ok(Schema::Const),
        Term::Atom(a) => Err(cx.err(a, format!("unknown schema '{a}'"))),
        Term::Call("affine", args) => Ok(Schema::Affine {
            coeffs: args
                .iter()
                .map(|a| scalar(cx, atom(cx, a, "a coefficient")?))
                .collect::<Result<_>>()?,
        }),
        Term::Call("rev", args) if args.len() == 1 => Ok(Schema::Reversed {
            inner: Box::new(schema(cx, &args[0])?),
        }),
        Term::Call(name, _) => Err(cx.err(name, format!("unknown schema '{name}'"))),
    }
}

fn schema_list(cx: &Ctx, s: &str) -> Result<Vec<Schema>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| cx.err(s, "expected [schema, ...]"))?;
    split_top(cx, inner, ',')?
        .into_iter()
        .map(|a| schema(cx, &term(cx, a)?))
        .collect()
}

fn axis_box(cx: &Ctx, s: &str) -> Result<AxisBox> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| cx.err(s, "expected a box (lo..hi, ...)"))?;
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for side in split_top(cx, inner, ',')? {
        let (a, b) = side
            .split_once("..")
            .ok_or_else(|| cx.err(side, "expected lo..hi"))?;
        lo.push(scalar(cx, a)?);
        hi.push(scalar(cx, b)?);
    }
    cx.wrap(s, AxisBox::new(lo, hi))
}

fn open_set(cx: &Ctx, amb: &Ambient, s: &str) -> Result<OpenSet> {
    let boxes = split_top(cx, s, '|')?
        .into_iter()
        .map(|b| axis_box(cx, b))
        .collect::<Result<Vec<_>>>()?;
    cx.wrap(s, OpenSet::new(amb.clone(), boxes))
}

fn need<T>(v: Option<T>, what: &str, text: &str) -> Result<T> {
    v.ok_or_else(|| Error::parse(text.lines().count().max(1), 1, format!("missing '{what}'")))
}

/// Space definition file.
pub fn parse_space(text: &str) -> Result<DSpace> {
    let mut name = None;
    let mut amb = None;
    let mut presentation = None;
    let mut pred = None;
    let mut schemas = None;
    let mut complete = false;
    let mut global_complete = false;
    let mut oracle = None;
    let mut saturated = None;
    let mut region_src: Option<(usize, String)> = None;
    for cx in lines(text) {
        let (k, v) = key_value(&cx).ok_or_else(|| cx.err(cx.line.trim(), "expected key = value"))?;
        match k {
            "name" => name = Some(v.to_string()),
            "ambient" => amb = Some(ambient(&cx, v)?),
            "presentation" => {
                presentation = Some(match v {
                    "predicate" => Presentation::Predicate,
                    "sheaf" => Presentation::Sheaf,
                    _ => return Err(cx.err(v, "expected predicate or sheaf")),
                })
            }
            "predicate" => pred = Some(predicate(&cx, &term(&cx, v)?)?),
            "generators" => schemas = Some(schema_list(&cx, v)?),
            "complete" => complete = boolean(&cx, v)?,
            "global_complete" => global_complete = boolean(&cx, v)?,
            "oracle" => oracle = Some(predicate(&cx, &term(&cx, v)?)?),
            "saturated" => saturated = Some(boolean(&cx, v)?),
            "region" => region_src = Some((cx.no, cx.line.to_string())),
            other => return Err(cx.err(k, format!("unknown key '{other}'"))),
        }
    }
    let amb = need(amb, "ambient", text)?;
    let presentation = need(presentation, "presentation", text)?;
    let region = match region_src {
        Some((no, line)) => {
            let cx = Ctx { no, line: &line };
            let v = key_value(&cx).map(|kv| kv.1).unwrap_or("");
            Some(open_set(&cx, &amb, v)?)
        }
        None => None,
    };
    let generators = schemas.map(|s| {
        let mut g = GeneratorFamily::new(s, complete);
        g.global_complete = global_complete;
        g
    });
    let space = DSpace {
        name: name.unwrap_or_else(|| "unnamed".into()),
        ambient: amb,
        presentation,
        predicate: pred,
        generators,
        oracle,
        region,
        saturated: saturated.unwrap_or(presentation == Presentation::Sheaf),
    };
    space
        .validate()
        .map_err(|e| Error::parse(1, 1, e.to_string()))?;
    Ok(space)
}

pub fn write_space(x: &DSpace) -> String {
    let mut out = format!(
        "name = {}\nambient = {}\npresentation = {}\n",
        x.name, x.ambient, x.presentation
    );
    if let Some(p) = &x.predicate {
        out += &format!("predicate = {p}\n");
    }
    if let Some(g) = &x.generators {
        out += &format!("generators = {g}\ncomplete = {}\n", g.complete);
        if g.global_complete {
            out += "global_complete = true\n";
        }
    }
    if let Some(o) = &x.oracle {
        out += &format!("oracle = {o}\n");
    }
    if let Some(r) = &x.region {
        out += &format!("region = {r}\n");
    }
    out += &format!("saturated = {}\n", x.saturated);
    out
}

/// A path file: `ambient = ...`, then records `path <label>` followed by
/// `t : coords` lines.
pub fn parse_paths(text: &str) -> Result<Vec<(String, PlPath)>> {
    struct Open {
        label: String,
        no: usize,
        ambient: Ambient,
        breaks: Vec<Scalar>,
        lifts: Vec<Vec<Scalar>>,
    }
    fn close(rec: Open, out: &mut Vec<(String, PlPath)>) -> Result<()> {
        let path = PlPath::new(rec.ambient, rec.breaks, rec.lifts)
            .map_err(|e| Error::parse(rec.no, 1, format!("path '{}': {e}", rec.label)))?;
        out.push((rec.label, path));
        Ok(())
    }
    let mut out = Vec::new();
    let mut amb: Option<Ambient> = None;
    let mut current: Option<Open> = None;
    for cx in lines(text) {
        let trimmed = cx.line.trim();
        if let Some(("ambient", v)) = key_value(&cx) {
            amb = Some(ambient(&cx, v)?);
        } else if trimmed == "path" || trimmed.starts_with("path ") {
            if let Some(rec) = current.take() {
                close(rec, &mut out)?;
            }
            let ambient = amb.clone().ok_or_else(|| cx.err(trimmed, "'ambient = ...' must come first"))?;
            current = Some(Open {
                label: trimmed[4..].trim().to_string(),
                no: cx.no,
                ambient,
                breaks: Vec::new(),
                lifts: Vec::new(),
            });
        } else {
            let rec = current
                .as_mut()
                .ok_or_else(|| cx.err(trimmed, "expected 'path <label>'"))?;
            let (t, coords) = trimmed
                .split_once(':')
                .ok_or_else(|| cx.err(trimmed, "expected 't : coords'"))?;
            let lift = scalars(&cx, coords)?;
            if lift.len() != rec.ambient.dim() {
                return Err(cx.err(coords.trim(), format!("expected {} coordinates", rec.ambient.dim())));
            }
            rec.breaks.push(scalar(&cx, t)?);
            rec.lifts.push(lift);
        }
    }
    if let Some(rec) = current.take() {
        close(rec, &mut out)?;
    }
    if out.is_empty() {
        return Err(Error::parse(1, 1, "no path records"));
    }
    Ok(out)
}

pub fn write_paths<'a>(paths: impl IntoIterator<Item = (&'a str, &'a PlPath)>) -> String {
    let mut out = String::new();
    let mut last: Option<&Ambient> = None;
    for (label, p) in paths {
        if last != Some(p.ambient()) {
            out += &format!("ambient = {}\n", p.ambient());
            last = Some(p.ambient());
        }
        out += &format!("path {label}\n");
        for (t, l) in p.breaks().iter().zip(p.lifts()) {
            out += &format!("  {t} : {}\n", join(l));
        }
    }
    out
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Open set file: `ambient = ...` then one `box (lo..hi, ...)` per line.
pub fn parse_open_set(text: &str) -> Result<OpenSet> {
    let mut amb = None;
    let mut boxes = Vec::new();
    let mut first_box = None;
    for cx in lines(text) {
        let trimmed = cx.line.trim();
        if let Some(("ambient", v)) = key_value(&cx) {
            amb = Some(ambient(&cx, v)?);
        } else if let Some(rest) = trimmed.strip_prefix("box") {
            first_box.get_or_insert(cx.no);
            boxes.push(axis_box(&cx, rest)?);
        } else {
            return Err(cx.err(trimmed, "expected 'ambient = ...' or 'box (lo..hi, ...)'"));
        }
    }
    let amb = need(amb, "ambient", text)?;
    OpenSet::new(amb, boxes).map_err(|e| Error::parse(first_box.unwrap_or(1), 1, e.to_string()))
}

pub fn write_open_set(y: &OpenSet) -> String {
    let mut out = format!("ambient = {}\n", y.ambient);
    for b in &y.boxes {
        out += &format!("box {b}\n");
    }
    out
}

/// Test function file.
pub fn parse_function(text: &str) -> Result<TestFunction> {
    let mut amb = None;
    let mut label = String::from("f");
    let mut clamp = true;
    let mut global = false;
    let mut domain: Option<(usize, String)> = None;
    let mut cells: Vec<(usize, String)> = Vec::new();
    for cx in lines(text) {
        let trimmed = cx.line.trim();
        if trimmed.starts_with("cell") {
            cells.push((cx.no, cx.line.to_string()));
            continue;
        }
        let (k, v) = key_value(&cx).ok_or_else(|| cx.err(trimmed, "expected key = value or a cell"))?;
        match k {
            "ambient" => amb = Some(ambient(&cx, v)?),
            "label" => label = v.to_string(),
            "clamp" => clamp = boolean(&cx, v)?,
            "global" => global = boolean(&cx, v)?,
            "domain" => domain = Some((cx.no, cx.line.to_string())),
            other => return Err(cx.err(k, format!("unknown key '{other}'"))),
        }
    }
    let amb = need(amb, "ambient", text)?;
    let (dno, dline) = need(domain, "domain", text)?;
    let dcx = Ctx { no: dno, line: &dline };
    let dom = open_set(&dcx, &amb, key_value(&dcx).map(|kv| kv.1).unwrap_or(""))?;
    let mut parsed = Vec::new();
    for (no, line) in &cells {
        let cx = Ctx { no: *no, line };
        let rest = cx.line.trim().strip_prefix("cell").unwrap_or("");
        let (bx, form) = rest.split_once(':').ok_or_else(|| cx.err(rest, "expected 'cell box : coeffs ; constant'"))?;
        let (coeffs, constant) = form.split_once(';').ok_or_else(|| cx.err(form, "expected 'coeffs ; constant'"))?;
        let region = axis_box(&cx, bx)?;
        let coeffs = scalars(&cx, coeffs)?;
        parsed.push(Cell {
            region,
            form: AffineForm::new(coeffs, scalar(&cx, constant)?),
        });
    }
    let f = TestFunction::new(label, dom, parsed, clamp)
        .map_err(|e| Error::parse(cells.first().map_or(1, |c| c.0), 1, e.to_string()))?;
    Ok(f.with_global(global))
}

pub fn write_function(f: &TestFunction) -> String {
    let mut out = format!(
        "ambient = {}\nlabel = {}\nclamp = {}\nglobal = {}\ndomain = {}\n",
        f.ambient(),
        f.label,
        f.clamp,
        f.global,
        f.domain
    );
    for c in &f.cells {
        out += &format!("cell {} : {} ; {}\n", c.region, join(&c.form.coeffs), c.form.constant);
    }
    out
}

/// Map file: `source`, `target`, then `cell <box or *> : rows ; ... | offset`.
pub fn parse_map(text: &str) -> Result<PlMap> {
    let mut source = None;
    let mut target = None;
    let mut cells = Vec::new();
    let mut first = 1;
    for cx in lines(text) {
        let trimmed = cx.line.trim();
        if let Some(rest) = trimmed.strip_prefix("cell") {
            if cells.is_empty() {
                first = cx.no;
            }
            let (bx, affine) = rest.split_once(':').ok_or_else(|| cx.err(rest, "expected 'cell box : matrix | offset'"))?;
            let region = if bx.trim() == "*" { None } else { Some(axis_box(&cx, bx)?) };
            let (rows, offset) = affine.split_once('|').ok_or_else(|| cx.err(affine, "expected 'matrix | offset'"))?;
            let matrix = rows.split(';').map(|r| scalars(&cx, r)).collect::<Result<Vec<_>>>()?;
            cells.push(MapCell {
                region,
                matrix,
                offset: scalars(&cx, offset)?,
            });
            continue;
        }
        let (k, v) = key_value(&cx).ok_or_else(|| cx.err(trimmed, "expected key = value or a cell"))?;
        match k {
            "source" => source = Some(ambient(&cx, v)?),
            "target" => target = Some(ambient(&cx, v)?),
            other => return Err(cx.err(k, format!("unknown key '{other}'"))),
        }
    }
    let source = need(source, "source", text)?;
    let target = need(target, "target", text)?;
    PlMap::new(source, target, cells).map_err(|e| Error::parse(first, 1, e.to_string()))
}

pub fn write_map(f: &PlMap) -> String {
    let mut out = format!("source = {}\ntarget = {}\n", f.source, f.target);
    for c in &f.cells {
        let region = c.region.as_ref().map_or("*".to_string(), ToString::to_string);
        let rows = c.matrix.iter().map(|r| join(r)).collect::<Vec<_>>().join("; ");
        out += &format!("cell {region} : {rows} | {}\n", join(&c.offset));
    }
    out
}

/// Bi-parameter grid file: `ambient`, `s = ...`, `t = ...`, then one
/// `row j : point ; point ; ...` per `t` breakpoint.
pub fn parse_grid(text: &str) -> Result<BiParamMap> {
    let mut amb = None;
    let mut s = None;
    let mut t = None;
    let mut rows: Vec<(usize, Vec<Vec<Scalar>>)> = Vec::new();
    for cx in lines(text) {
        let trimmed = cx.line.trim();
        if let Some(rest) = trimmed.strip_prefix("row") {
            let (j, pts) = rest.split_once(':').ok_or_else(|| cx.err(rest, "expected 'row j : points'"))?;
            let j = index(&cx, j)?;
            if j != rows.len() {
                return Err(cx.err(rest.trim(), format!("expected row {}", rows.len())));
            }
            let pts = pts.split(';').map(|p| scalars(&cx, p)).collect::<Result<Vec<_>>>()?;
            rows.push((cx.no, pts));
            continue;
        }
        let (k, v) = key_value(&cx).ok_or_else(|| cx.err(trimmed, "expected key = value or a row"))?;
        match k {
            "ambient" => amb = Some(ambient(&cx, v)?),
            "s" => s = Some(scalars(&cx, v)?),
            "t" => t = Some(scalars(&cx, v)?),
            other => return Err(cx.err(k, format!("unknown key '{other}'"))),
        }
    }
    let amb = need(amb, "ambient", text)?;
    let first = rows.first().map_or(1, |r| r.0);
    BiParamMap::new(
        amb,
        need(s, "s", text)?,
        need(t, "t", text)?,
        rows.into_iter().map(|r| r.1).collect(),
    )
    .map_err(|e| Error::parse(first, 1, e.to_string()))
}

pub fn write_grid(h: &BiParamMap) -> String {
    let mut out = format!("ambient = {}\ns = {}\nt = {}\n", h.ambient, join(&h.s), join(&h.t));
    for (j, row) in h.values.iter().enumerate() {
        let pts = row.iter().map(|p| join(p)).collect::<Vec<_>>().join("; ");
        out += &format!("row {j} : {pts}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_spaces_round_trip() {
        for fx in catalog::load_all() {
            let text = write_space(&fx.space);
            let back = parse_space(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", fx.name));
            assert_eq!(back, fx.space, "{text}");
        }
    }

    #[test]
    fn corpus_round_trips() {
        for fx in catalog::load_all() {
            let text = write_paths(fx.corpus.iter().map(|c| (c.label.as_str(), &c.path)));
            let back = parse_paths(&text).unwrap();
            assert_eq!(back.len(), fx.corpus.len());
            for ((label, p), c) in back.iter().zip(&fx.corpus) {
                assert_eq!(label, &c.label);
                assert_eq!(p, &c.path);
            }
        }
    }

    #[test]
    fn errors_point_at_the_token() {
        let text = "name = x\nambient = euclidean(2)\npresentation = predicate\npredicate = along(0, maybe, true)\n";
        match parse_space(text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (4, 22));
                assert!(message.contains("maybe"));
            }
            other => panic!("{other:?}"),
        }
        let paths = "ambient = euclidean(1)\npath p\n  0 : 0\n  1 : 1/0\n";
        assert!(matches!(parse_paths(paths), Err(Error::Parse { line: 4, column: 7, .. })));
    }

    #[test]
    fn function_map_grid_round_trip() {
        let f = parse_function(
            "ambient = euclidean(2)\nlabel = tent\nclamp = false\ndomain = (0..2, 0..1)\n\
             cell (0..1, 0..1) : 1, 0 ; 0\ncell (1..2, 0..1) : -1, 0 ; 2\n",
        )
        .unwrap();
        assert_eq!(parse_function(&write_function(&f)).unwrap(), f);
        let m = parse_map("source = euclidean(2)\ntarget = euclidean(1)\ncell * : 1, 1 | -1/2 + r2\n").unwrap();
        assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
        let g = parse_grid("ambient = torus(2)\ns = 0, 1/2, 1\nt = 0, 1\nrow 0 : 0, 0; 1/2, 0; 1, 0\nrow 1 : 0, 1; 1/2, 1; 1, 1\n").unwrap();
        assert_eq!(parse_grid(&write_grid(&g)).unwrap(), g);
        let y = parse_open_set("ambient = euclidean(1) x torus(1)\nbox (0..1, -1/4..1/2)\n").unwrap();
        assert_eq!(parse_open_set(&write_open_set(&y)).unwrap(), y);
    }
}
