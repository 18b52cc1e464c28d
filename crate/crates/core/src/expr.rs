//! Textual expression grammar for weight functions.
//!
//! Grammar (whitespace-insensitive, case-sensitive names):
//!
//! ```text
//! expr := "logplus"
//!       | "mono" "(" real ")"
//!       | "assoc" "(" path ")"
//!       | "powsub" "(" expr "," real ")"
//!       | "inv" "(" expr ")"
//!       | "lconj" "(" expr "," expr ")"
//!       | "uconj" "(" expr "," expr ")"
//!       | "scale" "(" real "," expr ")"
//!       | "shift" "(" real "," expr ")"
//!       | "zeroval" "(" real "," expr ")"
//! ```
//!
//! `assoc(path)` loads a sequence-definition file relative to the current
//! working directory (or an absolute path) and wraps its associated weight
//! function. `real` accepts anything `f64::from_str` accepts, plus `inf` /
//! `-inf`.

use std::path::{Path, PathBuf};

use crate::assoc::AssociatedWeight;
use crate::conjugate::ConjOptions;
use crate::extreal::ExtReal;
use crate::seqfile;
use crate::weightfn::WeightFunction;
use crate::{Error, Result};

/// Options controlling how expressions are turned into function values.
#[derive(Debug, Clone)]
pub struct ExprOptions {
    /// Base directory for relative `assoc(path)` references.
    pub base_dir: PathBuf,
    /// Grid options for `lconj` / `uconj` nodes.
    pub conj: ConjOptions,
    /// Truncation depth override for sequences loaded via `assoc`.
    pub depth: Option<usize>,
}

impl Default for ExprOptions {
    fn default() -> Self {
        ExprOptions {
            base_dir: PathBuf::from("."),
            conj: ConjOptions::default(),
            depth: None,
        }
    }
}

/// Parses an expression string into a [`WeightFunction`].
pub fn parse_expr(input: &str, opts: &ExprOptions) -> Result<WeightFunction> {
    let mut p = Parser {
        src: input,
        pos: 0,
        opts,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {}: {:?}",
            p.pos,
            &p.src[p.pos..]
        )));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    opts: &'a ExprOptions,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {ch:?} at byte {} in {:?}",
                self.pos, self.src
            )))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(Error::Parse(format!(
                "expected a name at byte {} in {:?}",
                self.pos, self.src
            )));
        }
        self.pos += end;
        Ok(&rest[..end])
    }

    /// A raw argument token: everything up to the next `,` or `)` at this
    /// nesting level. Used for numbers and file paths.
    fn raw_arg(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest.find([',', ')']).unwrap_or(rest.len());
        self.pos += end;
        Ok(rest[..end].trim())
    }

    fn real(&mut self) -> Result<f64> {
        let tok = self.raw_arg()?;
        match tok {
            "inf" | "+inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            _ => tok
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("invalid number {tok:?}"))),
        }
    }

    fn expr(&mut self) -> Result<WeightFunction> {
        let name = self.ident()?;
        match name {
            "logplus" => Ok(WeightFunction::LogPlus),
            "mono" => {
                self.expect('(')?;
                let a = self.real()?;
                self.expect(')')?;
                WeightFunction::monomial(a)
            }
            "assoc" => {
                self.expect('(')?;
                let path = self.raw_arg()?.to_string();
                self.expect(')')?;
                if path.is_empty() {
                    return Err(Error::Parse("assoc() requires a file path".into()));
                }
                let full = resolve(&self.opts.base_dir, &path);
                let mut seq = seqfile::load_sequence(&full)?;
                if let Some(p) = self.opts.depth {
                    seq = seq.truncated(p)?;
                }
                Ok(WeightFunction::associated(AssociatedWeight::new(seq)?))
            }
            "powsub" => {
                self.expect('(')?;
                let f = self.expr()?;
                self.expect(',')?;
                let a = self.real()?;
                self.expect(')')?;
                WeightFunction::power_sub(f, a)
            }
            "inv" => {
                self.expect('(')?;
                let f = self.expr()?;
                self.expect(')')?;
                Ok(WeightFunction::invert_var(f))
            }
            "lconj" | "uconj" => {
                self.expect('(')?;
                let f = self.expr()?;
                self.expect(',')?;
                let g = self.expr()?;
                self.expect(')')?;
                if name == "lconj" {
                    WeightFunction::lower_conj(f, g, self.opts.conj.clone())
                } else {
                    WeightFunction::upper_conj(f, g, self.opts.conj.clone())
                }
            }
            "scale" | "shift" | "zeroval" => {
                self.expect('(')?;
                let c = self.real()?;
                self.expect(',')?;
                let f = self.expr()?;
                self.expect(')')?;
                match name {
                    "scale" => WeightFunction::scale(c, f),
                    "shift" => WeightFunction::shift(c, f),
                    _ => Ok(WeightFunction::value_at_zero(ExtReal::new(c)?, f)),
                }
            }
            other => Err(Error::Parse(format!("unknown function {other:?}"))),
        }
    }
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::ExtReal;

    fn parse(s: &str) -> WeightFunction {
        parse_expr(s, &ExprOptions::default()).unwrap()
    }

    #[test]
    fn simple_atoms() {
        let f = parse("mono(2)");
        assert_eq!(f.eval(ExtReal::Finite(4.0)).unwrap(), ExtReal::Finite(2.0));
        let g = parse(" logplus ");
        let v = g.eval(ExtReal::Finite(std::f64::consts::E)).unwrap();
        assert!((v.to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nested_composites() {
        let f = parse("scale(2, shift(1, mono(1)))");
        // 2·(t + 1) at t = 3 → 8.
        assert_eq!(f.eval(ExtReal::Finite(3.0)).unwrap(), ExtReal::Finite(8.0));
        let g = parse("lconj(mono(1), mono(1))");
        let v = g.eval(ExtReal::Finite(4.0)).unwrap();
        assert!((v.to_f64() - 4.0).abs() < 1e-6, "got {v:?}");
    }

    #[test]
    fn assoc_loads_file() {
        let dir = std::env::temp_dir().join("weightconj-expr-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g1.seq");
        std::fs::write(&path, "kind: gevrey\ns: 1\n").unwrap();
        let opts = ExprOptions {
            base_dir: dir,
            ..ExprOptions::default()
        };
        let f = parse_expr("assoc(g1.seq)", &opts).unwrap();
        // ω_{G^1}(t) = 0 on [0, 1].
        assert_eq!(f.eval(ExtReal::Finite(0.5)).unwrap(), ExtReal::Finite(0.0));
    }

    #[test]
    fn parse_errors() {
        let o = ExprOptions::default();
        assert!(parse_expr("mono(oops)", &o).is_err());
        assert!(parse_expr("mystery(1)", &o).is_err());
        assert!(parse_expr("mono(1) trailing", &o).is_err());
        assert!(parse_expr("lconj(mono(1)", &o).is_err());
        assert!(parse_expr("assoc(/nonexistent/file.seq)", &o).is_err());
    }
}
