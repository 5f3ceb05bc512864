use std::fmt::Write as _;

use super::{word_to_string, GroupMap, PcElement, PcError, PcPresentation, Relations, Word};

fn parse_err(line: usize, msg: impl Into<String>) -> PcError {
    PcError::Parse { line, msg: msg.into() }
}

/// Parses `name^exp` tokens separated by whitespace; `1` is the empty word.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, PcError> {
    let mut w = Word::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| parse_err(0, format!("bad exponent in `{tok}`")))?;
                (n, e)
            }
            None => (tok, 1),
        };
        let g = names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| PcError::UnknownGenerator(name.to_string()))?;
        if exp != 0 {
            w.push((g, exp));
        }
    }
    Ok(w)
}

fn with_line(line: usize, e: PcError) -> PcError {
    match e {
        PcError::Parse { msg, .. } => parse_err(line, msg),
        other => other,
    }
}

/// Meaningful lines with their 1-based numbers; `#` starts a comment.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads the line-based presentation format:
///
/// ```text
/// pcgroup H
/// gens a b c
/// orders 0 0 0
/// conj b a = b c^-1
/// ```
///
/// `conj gj gi = w` means `gi⁻¹·gj·gi = w`; omitted pairs commute. `pow gi = w`
/// gives `gi^{m_i}` for a finite relative order `m_i` (default `1`).
pub fn parse_presentation(text: &str) -> Result<PcPresentation, PcError> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| parse_err(1, "empty presentation"))?;
    let name = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["pcgroup", name] => name.to_string(),
        _ => return Err(parse_err(ln, "expected `pcgroup <name>`")),
    };
    let (ln, gens_line) = it.next().ok_or_else(|| parse_err(ln + 1, "missing `gens` line"))?;
    let mut toks = gens_line.split_whitespace();
    if toks.next() != Some("gens") {
        return Err(parse_err(ln, "expected `gens <names>`"));
    }
    let names: Vec<String> = toks.map(str::to_string).collect();
    for n in &names {
        if n == "1" || n.contains('^') || n.contains('=') {
            return Err(parse_err(ln, format!("invalid generator name `{n}`")));
        }
    }
    let (ln, orders_line) = it.next().ok_or_else(|| parse_err(ln + 1, "missing `orders` line"))?;
    let mut toks = orders_line.split_whitespace();
    if toks.next() != Some("orders") {
        return Err(parse_err(ln, "expected `orders <m1> <m2> ...`"));
    }
    let orders = toks
        .map(|t| match t.parse::<i64>() {
            Ok(0) => Ok(None),
            Ok(m) if m > 0 => Ok(Some(m)),
            _ => Err(parse_err(ln, format!("bad relative order `{t}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if orders.len() != names.len() {
        return Err(parse_err(
            ln,
            format!("{} generators but {} orders", names.len(), orders.len()),
        ));
    }
    let mut rel = Relations::default();
    let index = |n: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| PcError::UnknownGenerator(n.to_string()))
    };
    for (ln, line) in it {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| parse_err(ln, "expected `conj ... = ...` or `pow ... = ...`"))?;
        let rhs = parse_word(rhs, &names).map_err(|e| with_line(ln, e))?;
        match lhs.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["conj", gj, gi] => rel.conj.push(((index(gj)?, index(gi)?), rhs)),
            ["pow", gi] => rel.pow.push((index(gi)?, rhs)),
            _ => return Err(parse_err(ln, format!("unrecognized relation `{lhs}`"))),
        }
    }
    PcPresentation::new(name, names, orders, rel)
}

/// Renders a presentation in the format read by [`parse_presentation`].
pub fn write_presentation(g: &PcPresentation) -> String {
    let names = g.gen_names();
    let mut s = format!("pcgroup {}\ngens {}\norders", g.name(), names.join(" "));
    for o in g.relative_orders() {
        let _ = write!(s, " {}", o.unwrap_or(0));
    }
    s.push('\n');
    let rel = g.relations();
    for ((j, i), w) in &rel.conj {
        let _ = writeln!(s, "conj {} {} = {}", names[*j], names[*i], word_to_string(w, names));
    }
    for (i, w) in &rel.pow {
        let _ = writeln!(s, "pow {} = {}", names[*i], word_to_string(w, names));
    }
    s
}

/// A parsed automorphism file, before validation against the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSpec {
    pub name: String,
    pub group: String,
    pub images: Vec<PcElement>,
}

/// Reads `aut <name> on <group>` followed by one `image <gen> = <word>` line
/// per generator of `g`.
pub fn parse_automorphism(text: &str, g: &PcPresentation) -> Result<AutomorphismSpec, PcError> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| parse_err(1, "empty automorphism file"))?;
    let (name, group) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["aut", name, "on", group] => (name.to_string(), group.to_string()),
        _ => return Err(parse_err(ln, "expected `aut <name> on <group>`")),
    };
    if group != g.name() {
        return Err(PcError::GroupMismatch(format!(
            "automorphism is on `{group}`, presentation is `{}`",
            g.name()
        )));
    }
    let names = g.gen_names();
    let mut images: Vec<Option<PcElement>> = vec![None; g.len()];
    for (ln, line) in it {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| parse_err(ln, "expected `image <gen> = <word>`"))?;
        let gen = match lhs.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["image", gen] => names
                .iter()
                .position(|x| x == gen)
                .ok_or_else(|| PcError::UnknownGenerator(gen.to_string()))?,
            _ => return Err(parse_err(ln, format!("unrecognized line `{line}`"))),
        };
        if images[gen].is_some() {
            return Err(parse_err(ln, format!("duplicate image for `{}`", names[gen])));
        }
        let w = parse_word(rhs, names).map_err(|e| with_line(ln, e))?;
        images[gen] = Some(g.evaluate(&w));
    }
    let got = images.iter().filter(|x| x.is_some()).count();
    if got != g.len() {
        return Err(PcError::ImageCount { expected: g.len(), got });
    }
    Ok(AutomorphismSpec {
        name,
        group,
        images: images.into_iter().flatten().collect(),
    })
}

pub fn write_automorphism(name: &str, f: &GroupMap) -> String {
    let g = f.source();
    let mut s = format!("aut {} on {}\n", name, g.name());
    for (n, w) in g.gen_names().iter().zip(f.image_words()) {
        let _ = writeln!(s, "image {n} = {w}");
    }
    s
}
