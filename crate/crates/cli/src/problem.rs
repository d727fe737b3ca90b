//! Line-oriented problem files.
//!
//! Unindented lines are declarations; indented lines belong to the block opened
//! by the closest preceding header ending in `:`. `#` starts a comment.

use std::fmt;

use dynext::dynsys::RationalPoint;
use dynext::field::{FieldSpec, MIN_DEFAULT_CHARACTERISTIC};
use dynext::{PolyRing, Polynomial, Ring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ProblemError {
    ProblemError { line, column, message: message.into() }
}

/// An ideal-presented system: `X = V(ideal)` with `φ` given by `map`.
#[derive(Debug, Clone)]
pub struct SystemInput {
    pub ring: Ring,
    pub ideal: Vec<Polynomial>,
    pub q: u32,
    pub map: Vec<Polynomial>,
}

/// A parametrized curve with a self-map `(P, Q)` of `P^1`.
#[derive(Debug, Clone)]
pub struct CurveInput {
    pub param_ring: Ring,
    pub ambient: Ring,
    pub forms: Vec<Polynomial>,
    pub q: u32,
    pub selfmap: Vec<Polynomial>,
}

#[derive(Debug, Clone)]
pub enum Body {
    System(SystemInput),
    Curve(CurveInput),
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub field: FieldSpec,
    pub body: Body,
    pub points: Vec<RationalPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Ideal,
    Map,
    Param,
    Selfmap,
    Points,
}

impl Block {
    fn header(self) -> &'static str {
        match self {
            Block::Ideal => "ideal:",
            Block::Map => "map degree",
            Block::Param => "param:",
            Block::Selfmap => "selfmap degree",
            Block::Points => "points:",
        }
    }
}

#[derive(Default)]
struct State {
    field: Option<FieldSpec>,
    ring: Option<Ring>,
    param_ring: Option<Ring>,
    ambient: Option<Ring>,
    ideal: Option<Vec<Polynomial>>,
    map: Option<(u32, Vec<Polynomial>)>,
    param: Option<Vec<Polynomial>>,
    selfmap: Option<(u32, Vec<Polynomial>)>,
    points: Option<Vec<(usize, usize, String)>>,
    /// Line of the first system-style and curve-style declaration.
    system_line: Option<usize>,
    curve_line: Option<usize>,
}

/// Parses a problem file. Fields below the default minimum characteristic are
/// accepted only when `allow_small_prime` is set.
pub fn parse_problem(text: &str, allow_small_prime: bool) -> Result<Problem, ProblemError> {
    let mut st = State::default();
    let mut open: Option<(Block, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim();
        if indent > 0 {
            let Some((block, _)) = open else {
                return Err(err(line_no, indent + 1, "indented line outside a block"));
            };
            st.block_line(block, line_no, indent + 1, body)?;
            continue;
        }
        open = st.declaration(line_no, body, allow_small_prime)?;
    }
    st.finish()
}

fn parse_degree(line: usize, rest: &str, header: &str) -> Result<u32, ProblemError> {
    let Some(num) = rest.strip_suffix(':') else {
        return Err(err(line, header.len() + 1, format!("expected '{header} <q>:'")));
    };
    num.trim()
        .parse()
        .map_err(|_| err(line, header.len() + 2, format!("invalid degree '{}'", num.trim())))
}

impl State {
    fn field(&self) -> FieldSpec {
        self.field.unwrap_or(FieldSpec::Rationals)
    }

    fn mark_system(&mut self, line: usize) -> Result<(), ProblemError> {
        if self.curve_line.is_some() {
            return Err(err(line, 1, "ideal-presented and parametrized declarations cannot be mixed"));
        }
        self.system_line.get_or_insert(line);
        Ok(())
    }

    fn mark_curve(&mut self, line: usize) -> Result<(), ProblemError> {
        if self.system_line.is_some() {
            return Err(err(line, 1, "ideal-presented and parametrized declarations cannot be mixed"));
        }
        self.curve_line.get_or_insert(line);
        Ok(())
    }

    fn declaration(
        &mut self,
        line: usize,
        body: &str,
        allow_small_prime: bool,
    ) -> Result<Option<(Block, usize)>, ProblemError> {
        let words: Vec<&str> = body.split_whitespace().collect();
        let duplicate = |what: &str| err(line, 1, format!("duplicate '{what}' declaration"));
        match words.as_slice() {
            ["field", rest @ ..] => {
                if self.field.is_some() {
                    return Err(duplicate("field"));
                }
                if self.ring.is_some() || self.param_ring.is_some() {
                    return Err(err(line, 1, "the field must be declared before any ring"));
                }
                self.field = Some(match rest {
                    ["rational"] => FieldSpec::Rationals,
                    ["prime", p] => {
                        let p: u64 = p.parse().map_err(|_| err(line, 13, format!("invalid prime '{p}'")))?;
                        let made = if allow_small_prime {
                            FieldSpec::small_prime_field(p)
                        } else {
                            FieldSpec::prime_field(p)
                        };
                        made.map_err(|e| {
                            if p < MIN_DEFAULT_CHARACTERISTIC && !allow_small_prime {
                                let msg = format!(
                                    "characteristic {p} is below the minimum {MIN_DEFAULT_CHARACTERISTIC}; \
                                     pass --allow-small-prime to accept it"
                                );
                                err(line, 13, msg)
                            } else {
                                err(line, 13, e.to_string())
                            }
                        })?
                    }
                    _ => return Err(err(line, 7, "expected 'field rational' or 'field prime <p>'")),
                });
                Ok(None)
            }
            ["ring", names @ ..] => {
                self.mark_system(line)?;
                if self.ring.is_some() {
                    return Err(duplicate("ring"));
                }
                self.ring = Some(PolyRing::new(names.iter().copied(), self.field()).map_err(|e| err(line, 6, e.to_string()))?);
                Ok(None)
            }
            ["param", "ring", names @ ..] => {
                self.mark_curve(line)?;
                if self.param_ring.is_some() {
                    return Err(duplicate("param ring"));
                }
                self.param_ring =
                    Some(PolyRing::new(names.iter().copied(), self.field()).map_err(|e| err(line, 12, e.to_string()))?);
                Ok(None)
            }
            ["ambient", m] => {
                self.mark_curve(line)?;
                if self.ambient.is_some() {
                    return Err(duplicate("ambient"));
                }
                let m: usize = m.parse().map_err(|_| err(line, 9, format!("invalid dimension '{m}'")))?;
                if m == 0 {
                    return Err(err(line, 9, "ambient dimension must be positive"));
                }
                self.ambient = Some(PolyRing::indexed("x", m + 1, self.field()).map_err(|e| err(line, 9, e.to_string()))?);
                Ok(None)
            }
            ["ideal:"] => {
                self.mark_system(line)?;
                self.require(self.ring.is_some(), line, "ring", "ideal:")?;
                if self.ideal.is_some() {
                    return Err(duplicate("ideal"));
                }
                self.ideal = Some(Vec::new());
                Ok(Some((Block::Ideal, line)))
            }
            ["map", "degree", rest @ ..] => {
                self.mark_system(line)?;
                self.require(self.ring.is_some(), line, "ring", "map")?;
                if self.map.is_some() {
                    return Err(duplicate("map"));
                }
                let q = parse_degree(line, &rest.join(" "), "map degree")?;
                self.map = Some((q, Vec::new()));
                Ok(Some((Block::Map, line)))
            }
            ["param:"] => {
                self.mark_curve(line)?;
                self.require(self.param_ring.is_some(), line, "param ring", "param:")?;
                self.require(self.ambient.is_some(), line, "ambient", "param:")?;
                if self.param.is_some() {
                    return Err(duplicate("param"));
                }
                self.param = Some(Vec::new());
                Ok(Some((Block::Param, line)))
            }
            ["selfmap", "degree", rest @ ..] => {
                self.mark_curve(line)?;
                self.require(self.param_ring.is_some(), line, "param ring", "selfmap")?;
                if self.selfmap.is_some() {
                    return Err(duplicate("selfmap"));
                }
                let q = parse_degree(line, &rest.join(" "), "selfmap degree")?;
                self.selfmap = Some((q, Vec::new()));
                Ok(Some((Block::Selfmap, line)))
            }
            ["points:"] => {
                if self.points.is_some() {
                    return Err(duplicate("points"));
                }
                self.points = Some(Vec::new());
                Ok(Some((Block::Points, line)))
            }
            _ => Err(err(line, 1, format!("unknown declaration '{body}'"))),
        }
    }

    fn require(&self, present: bool, line: usize, what: &str, user: &str) -> Result<(), ProblemError> {
        if present {
            Ok(())
        } else {
            Err(err(line, 1, format!("'{what}' must be declared before '{user}'")))
        }
    }

    fn block_line(&mut self, block: Block, line: usize, column: usize, text: &str) -> Result<(), ProblemError> {
        let ring = match block {
            Block::Ideal | Block::Map => self.ring.clone(),
            Block::Selfmap | Block::Param => self.param_ring.clone(),
            Block::Points => {
                self.points.as_mut().expect("open block").push((line, column, text.to_string()));
                return Ok(());
            }
        };
        let ring = ring.expect("checked at the header");
        let poly = ring.parse(text).map_err(|e| {
            let column = if e.line == 1 { column + e.column - 1 } else { e.column };
            let message = e.to_string();
            let message = message.split_once(": ").map_or(message.clone(), |(_, m)| m.to_string());
            err(line + e.line - 1, column, format!("in {} block: {message}", block.header()))
        })?;
        match block {
            Block::Ideal => self.ideal.as_mut().unwrap().push(poly),
            Block::Map => self.map.as_mut().unwrap().1.push(poly),
            Block::Param => self.param.as_mut().unwrap().push(poly),
            Block::Selfmap => self.selfmap.as_mut().unwrap().1.push(poly),
            Block::Points => unreachable!(),
        }
        Ok(())
    }

    fn finish(self) -> Result<Problem, ProblemError> {
        let field = self.field();
        let body = if let Some(start) = self.system_line {
            let ring = self.ring.ok_or_else(|| err(start, 1, "missing 'ring' declaration"))?;
            let (q, map) = self.map.ok_or_else(|| err(start, 1, "missing 'map degree <q>:' block"))?;
            Body::System(SystemInput { ring, ideal: self.ideal.unwrap_or_default(), q, map })
        } else if let Some(start) = self.curve_line {
            let param_ring = self.param_ring.ok_or_else(|| err(start, 1, "missing 'param ring' declaration"))?;
            let ambient = self.ambient.ok_or_else(|| err(start, 1, "missing 'ambient' declaration"))?;
            let forms = self.param.ok_or_else(|| err(start, 1, "missing 'param:' block"))?;
            let (q, selfmap) = self.selfmap.ok_or_else(|| err(start, 1, "missing 'selfmap degree <q>:' block"))?;
            Body::Curve(CurveInput { param_ring, ambient, forms, q, selfmap })
        } else {
            return Err(err(1, 1, "no 'ring' or 'param ring' declaration"));
        };
        let mut points = Vec::new();
        for (line, column, text) in self.points.unwrap_or_default() {
            points.push(RationalPoint::parse(field, &text).map_err(|e| err(line, column, e.to_string()))?);
        }
        Ok(Problem { field, body, points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONIC: &str = "# conic squaring\nfield rational\nring x0 x1 x2\nideal:\n  x0*x2 - x1^2\nmap degree 2:\n  x0^2\n  x1^2\n  x2^2\npoints:\n  1:-1:1\n";

    #[test]
    fn parses_system() {
        let p = parse_problem(CONIC, false).unwrap();
        let Body::System(s) = p.body else { panic!("expected a system") };
        assert_eq!(s.q, 2);
        assert_eq!(s.ideal.len(), 1);
        assert_eq!(s.map.len(), 3);
        assert_eq!(p.points.len(), 1);
    }

    #[test]
    fn parses_curve() {
        let text = "field rational\nparam ring u v\nambient 3\nparam:\n  u^5\n  u^4*v\n  u*v^4\n  v^5\nselfmap degree 2:\n  u^2 + u*v + v^2\n  u*v + v^2\n";
        let p = parse_problem(text, false).unwrap();
        let Body::Curve(c) = p.body else { panic!("expected a curve") };
        assert_eq!(c.ambient.names(), ["x0", "x1", "x2", "x3"]);
        assert_eq!(c.forms.len(), 4);
        assert_eq!(c.selfmap.len(), 2);
    }

    #[test]
    fn polynomial_errors_point_into_the_file() {
        let text = "ring x0 x1\nmap degree 2:\n  x0^2\n    x1 +* x0\n";
        let e = parse_problem(text, false).unwrap_err();
        assert_eq!((e.line, e.column), (4, 9));
        let text = "ring x0 x1\nmap degree 2:\n  x0^2 + y\n";
        let e = parse_problem(text, false).unwrap_err();
        assert_eq!((e.line, e.column), (3, 10));
        assert!(e.message.contains("unknown variable 'y'"));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_problem("  x0\n", false).unwrap_err().line, 1);
        assert_eq!(parse_problem("ideal:\n  x0\n", false).unwrap_err().line, 1);
        assert!(parse_problem("ring x0 x1\n", false).is_err());
        assert!(parse_problem("ring x0\nring x1\n", false).is_err());
        assert!(parse_problem("ring x0 x1\nambient 1\n", false).is_err());
        assert!(parse_problem("ring x0 x1\nmap degree two:\n", false).is_err());
        assert!(parse_problem("ring x0 x1\nfield rational\n", false).is_err());
        assert!(parse_problem("bogus\n", false).is_err());
    }

    #[test]
    fn small_primes_need_the_flag() {
        let text = "field prime 1000003\nring x0 x1\nmap degree 2:\n  x0^2\n  x1^2\n";
        let e = parse_problem(text, false).unwrap_err();
        assert!(e.message.contains("--allow-small-prime"));
        let p = parse_problem(text, true).unwrap();
        assert_eq!(p.field.characteristic(), 1_000_003);
        assert!(parse_problem(&text.replace("1000003", "1048577"), true).is_err());
    }
}
