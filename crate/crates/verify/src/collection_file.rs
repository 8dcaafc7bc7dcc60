//! Collection files: a tower line, an optional header, then one object per
//! line.
//!
//! ```text
//! point(V=4); G(2,V); P(S^2 S1)
//! mode: dual-lefschetz; twists: -3..0
//! O(-H2)
//! T_rel(2) * O(L1 - H2) @ -1..0
//! ```
//!
//! Header keys are `mode` (`plain`, `lefschetz`, `dual-lefschetz`), `twists`
//! (default schedule `a..b`) and `twist` (the twisting line bundle, default
//! `O(H<top level>)`). `#` starts a comment.

use towercoh::cohomology::{CollectionMode, CollectionObject, CollectionSpec};
use towercoh::tower::{BundleExpr, TowerSpace};
use towercoh::{Error, Result};

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

/// Parses `a..b` or a single integer.
fn parse_range(text: &str, offset: usize) -> Result<Vec<i32>> {
    let int = |s: &str| s.trim().parse::<i32>().map_err(|_| parse_error(offset, format!("bad integer {s:?}")));
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (int(a)?, int(b)?);
            if a > b {
                return Err(parse_error(offset, format!("empty twist range {a}..{b}")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![int(text)?]),
    }
}

/// Shifts the offset of an error raised while parsing a substring.
fn at(offset: usize, e: Error) -> Error {
    match e {
        Error::Parse { offset: o, message } => Error::Parse { offset: offset + o, message },
        other => other,
    }
}

pub fn parse_collection(text: &str) -> Result<(TowerSpace, CollectionSpec)> {
    let mut lines = Vec::new();
    let mut start = 0;
    for raw in text.split_inclusive('\n') {
        let body = raw.split('#').next().unwrap_or("").trim_end();
        let lead = body.len() - body.trim_start().len();
        if !body.trim().is_empty() {
            lines.push((start + lead, body.trim()));
        }
        start += raw.len();
    }
    let mut it = lines.into_iter().peekable();
    let (off, tower_line) = it.next().ok_or_else(|| parse_error(0, "empty collection file"))?;
    let space = TowerSpace::parse(tower_line).map_err(|e| at(off, e))?;
    let mut mode = CollectionMode::Plain;
    let mut default_twists = vec![0];
    let mut twist = BundleExpr::line(space.levels(), 1);
    if let Some((off, header)) = it.peek().copied().filter(|(_, l)| l.starts_with("mode:")) {
        it.next();
        let mut pos = 0;
        for field in header.split(';') {
            let field_off = off + pos + (field.len() - field.trim_start().len());
            pos += field.len() + 1;
            let (key, value) = field.split_once(':').ok_or_else(|| parse_error(field_off, "expected key: value"))?;
            let value_off = field_off + key.len() + 1 + (value.len() - value.trim_start().len());
            match key.trim() {
                "mode" => {
                    mode = match value.trim() {
                        "plain" => CollectionMode::Plain,
                        "lefschetz" => CollectionMode::Lefschetz,
                        "dual-lefschetz" => CollectionMode::DualLefschetz,
                        other => return Err(parse_error(value_off, format!("unknown mode {other:?}"))),
                    }
                }
                "twists" => default_twists = parse_range(value, value_off)?,
                "twist" => twist = space.expr(value.trim()).map_err(|e| at(value_off, e))?,
                other => return Err(parse_error(field_off, format!("unknown header key {other:?}"))),
            }
        }
    }
    let mut objects = Vec::new();
    for (off, line) in it {
        let (expr_text, twists) = match line.split_once('@') {
            Some((e, r)) => (e, parse_range(r, off + e.len() + 1)?),
            None => (line, default_twists.clone()),
        };
        let expr = space.expr(expr_text.trim()).map_err(|e| at(off, e))?;
        objects.push(CollectionObject { expr, twists });
    }
    if objects.is_empty() {
        return Err(parse_error(text.len(), "collection has no objects"));
    }
    let spec = CollectionSpec { mode, twist, objects };
    spec.items()?;
    Ok((space, spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_and_schedules() {
        let text = "point(V=4); G(2,V); P(S^2 S1)\nmode: dual-lefschetz; twists: -3..0\nO(-H2)\n# tangent part\nT_rel(2) * O(L1 - H2) @ -1..0\n";
        let (space, spec) = parse_collection(text).unwrap();
        assert_eq!(space.dim(), 6);
        assert_eq!(spec.mode, CollectionMode::DualLefschetz);
        assert_eq!(spec.objects[0].twists, vec![-3, -2, -1, 0]);
        assert_eq!(spec.objects[1].twists, vec![-1, 0]);
        assert_eq!(spec.twist, BundleExpr::line(2, 1));
        assert_eq!(spec.items().unwrap().len(), 6);
    }

    #[test]
    fn plain_without_header() {
        let (_, spec) = parse_collection("point(V=3); P(V)\nO\nO(H1)\nO(2H1)").unwrap();
        assert_eq!(spec.mode, CollectionMode::Plain);
        assert_eq!(spec.objects.len(), 3);
    }

    #[test]
    fn errors_carry_file_offsets() {
        let text = "point(V=3); P(V)\nO\nS1 * foo\n";
        match parse_collection(text) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 19 + 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_collection(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_collection("point(V=3); P(V)\nmode: sideways\nO"), Err(Error::Parse { .. })));
        assert!(matches!(parse_collection("point(V=3); P(V)\nmode: plain; twists: 2..1\nO"), Err(Error::Parse { .. })));
    }
}
