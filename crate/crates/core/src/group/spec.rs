//! Group specifications:
//!
//! ```text
//! spec  := atom | spec '^' INT ':' ('cyclic' | 'trivial')
//! atom  := Alt(n) | Sym(n) | Cyclic(n) | PSL(2,q) | PGL(2,q)
//!        | wreath(spec, spec, cosets(elem, ...))
//! ```

use std::sync::Arc;

use super::{coset_action, GroupHandle, IndexedGroup};
use crate::error::{Error, Result};

/// Splits on `sep` at bracket depth zero.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn last_top_level(s: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == target && depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

fn parse_int(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, got {:?}", s.trim())))
}

/// Builds the group described by `spec`. Components that must be enumerated
/// (power bases, wreath fibers and tops) are indexed subject to `cap`.
pub fn make_group(spec: &str, cap: usize) -> Result<GroupHandle> {
    let spec = spec.trim();
    if let Some(i) = last_top_level(spec, '^') {
        let base = make_indexed(&spec[..i], cap)?;
        let rest = &spec[i + 1..];
        let (k, kind) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("power needs ': cyclic' or ': trivial' in {spec:?}")))?;
        let k = parse_int(k)? as usize;
        let cyclic = match kind.trim() {
            "cyclic" => true,
            "trivial" => false,
            other => return Err(Error::Parse(format!("unknown top group {other:?}"))),
        };
        return GroupHandle::power(base, k, cyclic);
    }
    let open = spec.find('(').ok_or_else(|| Error::Parse(format!("unrecognised group {spec:?}")))?;
    let body = spec[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {spec:?}")))?;
    let args = split_top_level(body, ',');
    let name = spec[..open].trim();
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("{name} takes {n} argument(s), got {}", args.len())))
        }
    };
    match name {
        "Alt" | "A" => {
            want(1)?;
            Ok(GroupHandle::alternating(parse_int(args[0])? as usize))
        }
        "Sym" | "S" => {
            want(1)?;
            Ok(GroupHandle::symmetric(parse_int(args[0])? as usize))
        }
        "Cyclic" | "C" => {
            want(1)?;
            Ok(GroupHandle::cyclic(parse_int(args[0])? as usize))
        }
        "PSL" | "PGL" => {
            want(2)?;
            if parse_int(args[0])? != 2 {
                return Err(Error::InvalidInput("only dimension 2 is supported".into()));
            }
            let q = parse_int(args[1])?;
            if name == "PSL" {
                GroupHandle::psl2(q)
            } else {
                GroupHandle::pgl2(q)
            }
        }
        "wreath" => {
            want(3)?;
            let fiber = make_indexed(args[0], cap)?;
            let top = make_indexed(args[1], cap)?;
            let cos = args[2].trim();
            let inner = cos
                .strip_prefix("cosets(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected cosets(...), got {cos:?}")))?;
            let gens = split_top_level(inner, ',')
                .into_iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| top.index_of_parsed(s))
                .collect::<Result<Vec<_>>>()?;
            let action = coset_action(top, &gens)?;
            Ok(GroupHandle::semidirect(fiber, Arc::new(action)))
        }
        _ => Err(Error::Parse(format!("unknown group family {name:?}"))),
    }
}

pub fn make_indexed(spec: &str, cap: usize) -> Result<Arc<IndexedGroup>> {
    Ok(Arc::new(IndexedGroup::new(make_group(spec, cap)?, cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Backend, Element, DEFAULT_INDEX_CAP};
    use num_bigint::BigUint;

    #[test]
    fn splits_at_depth_zero() {
        assert_eq!(split_top_level("(0 1),[[1,2],[3,4]], x", ','), vec!["(0 1)", "[[1,2],[3,4]]", " x"]);
    }

    #[test]
    fn parses_families() {
        for (s, n) in [("Alt(5)", 60u64), ("Sym(4)", 24), ("PSL(2,7)", 168), ("PGL(2,4)", 60), ("Cyclic(6)", 6)] {
            assert_eq!(make_group(s, DEFAULT_INDEX_CAP).unwrap().order(), &BigUint::from(n));
        }
        let p = make_group("Alt(5)^3 : cyclic", DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(p.order(), &BigUint::from(60u64 * 60 * 60 * 3));
        let t = make_group("PSL(2,5)^2 : trivial", DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(t.order(), &BigUint::from(3600u32));
    }

    #[test]
    fn parses_wreath_with_matrix_generators() {
        let g = make_group("wreath(Alt(5), PSL(2,5), cosets([[1,1],[0,1]], [[2,0],[0,3]]))", DEFAULT_INDEX_CAP).unwrap();
        match g.backend() {
            Backend::Semidirect { action, .. } => assert_eq!(action.degree(), 6),
            _ => panic!("expected a semidirect product"),
        }
        let x = g.generators()[0].clone();
        assert!(matches!(x, Element::Semi(_)));
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
    }

    #[test]
    fn rejects_garbage() {
        assert!(make_group("Foo(3)", 100).is_err());
        assert!(make_group("Alt(5)^2 : sideways", 100).is_err());
        assert!(make_group("PSL(3,5)", 100).is_err());
        assert!(make_group("PSL(2,6)", 100).is_err());
    }
}
