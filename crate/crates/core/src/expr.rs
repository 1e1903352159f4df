//! Text expressions naming graph families and their direct products, e.g.
//! `cycle(3) x cycle(5) x complete(2)` or `tilde(kbip(2,3), 4)`.
//!
//! ```text
//! expr   := term ('x' term)*
//! term   := 'cycle(' N ')' | 'complete(' N ')' | 'kbip(' M ',' N ')'
//!         | 'path(' N ')' | 'petersen'
//!         | 'bip(' M ',' N ',' P ',' SEED ',' MIN_DELTA ')'
//!         | 'gnp(' N ',' P ',' SEED ',' MIN_DELTA ')'
//!         | 'file(' PATH ')' | 'tilde(' expr ',' N ')' | '(' expr ')'
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::constructors::{
    complete, complete_bipartite, cycle, direct_product, path, petersen,
    random_connected_bipartite, random_connected_nonbipartite, tilde,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::read_graph_file;

#[derive(Debug, Clone, PartialEq)]
pub enum ProductSpec {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Petersen,
    RandomBipartite {
        m: usize,
        n: usize,
        p: f64,
        seed: u64,
        min_delta: usize,
    },
    RandomNonbipartite {
        n: usize,
        p: f64,
        seed: u64,
        min_delta: usize,
    },
    File(PathBuf),
    Tilde(Box<ProductSpec>, usize),
    Product(Box<ProductSpec>, Box<ProductSpec>),
}

impl ProductSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            ProductSpec::Cycle(n) => cycle(*n),
            ProductSpec::Complete(n) => complete(*n),
            ProductSpec::CompleteBipartite(m, n) => complete_bipartite(*m, *n),
            ProductSpec::Path(n) => path(*n),
            ProductSpec::Petersen => Ok(petersen()),
            &ProductSpec::RandomBipartite {
                m,
                n,
                p,
                seed,
                min_delta,
            } => Ok(random_connected_bipartite(m, n, p, seed, min_delta)?.0),
            &ProductSpec::RandomNonbipartite {
                n,
                p,
                seed,
                min_delta,
            } => random_connected_nonbipartite(n, p, seed, min_delta),
            ProductSpec::File(path) => read_graph_file(path),
            ProductSpec::Tilde(inner, n) => {
                let g = inner.build()?;
                let bip = g
                    .bipartition()
                    .ok_or_else(|| Error::input(format!("tilde of non-bipartite `{inner}`")))?;
                Ok(tilde(&g, &bip, *n)?.graph)
            }
            ProductSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
        }
    }

    /// Leaves of the product tree, left to right.
    pub fn factors(&self) -> Vec<&ProductSpec> {
        match self {
            ProductSpec::Product(a, b) => {
                let mut f = a.factors();
                f.extend(b.factors());
                f
            }
            leaf => vec![leaf],
        }
    }

    /// Cycle lengths when the expression is a product of odd cycles only.
    pub fn odd_cycle_factors(&self) -> Option<Vec<usize>> {
        self.factors()
            .into_iter()
            .map(|f| match f {
                ProductSpec::Cycle(n) if n % 2 == 1 => Some(*n),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductSpec::Cycle(n) => write!(f, "cycle({n})"),
            ProductSpec::Complete(n) => write!(f, "complete({n})"),
            ProductSpec::CompleteBipartite(m, n) => write!(f, "kbip({m},{n})"),
            ProductSpec::Path(n) => write!(f, "path({n})"),
            ProductSpec::Petersen => write!(f, "petersen"),
            ProductSpec::RandomBipartite {
                m,
                n,
                p,
                seed,
                min_delta,
            } => write!(f, "bip({m},{n},{p},{seed},{min_delta})"),
            ProductSpec::RandomNonbipartite {
                n,
                p,
                seed,
                min_delta,
            } => write!(f, "gnp({n},{p},{seed},{min_delta})"),
            ProductSpec::File(p) => write!(f, "file({})", p.display()),
            ProductSpec::Tilde(inner, n) => write!(f, "tilde({inner}, {n})"),
            ProductSpec::Product(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, ProductSpec::Product(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_owned(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn expr(&mut self) -> Result<ProductSpec> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            let rest = self.rest();
            let is_op = rest.starts_with('x')
                && !rest[1..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_');
            if !is_op {
                return Ok(acc);
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = ProductSpec::Product(Box::new(acc), Box::new(rhs));
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn number<T: FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-'))
            .unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        let value = text.parse().map_err(|_| self.error("expected a number"))?;
        self.pos += len;
        Ok(value)
    }

    fn args<const N: usize>(&mut self) -> Result<[usize; N]> {
        self.expect("(")?;
        let mut out = [0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(",")?;
            }
            *slot = self.number()?;
        }
        self.expect(")")?;
        Ok(out)
    }

    fn term(&mut self) -> Result<ProductSpec> {
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let start = self.pos;
        let name = self.ident().to_owned();
        match name.as_str() {
            "cycle" => Ok(ProductSpec::Cycle(self.args::<1>()?[0])),
            "complete" => Ok(ProductSpec::Complete(self.args::<1>()?[0])),
            "path" => Ok(ProductSpec::Path(self.args::<1>()?[0])),
            "kbip" => {
                let [m, n] = self.args()?;
                Ok(ProductSpec::CompleteBipartite(m, n))
            }
            "petersen" => Ok(ProductSpec::Petersen),
            "bip" => {
                self.expect("(")?;
                let m = self.number()?;
                self.expect(",")?;
                let n = self.number()?;
                self.expect(",")?;
                let p = self.number()?;
                self.expect(",")?;
                let seed = self.number()?;
                self.expect(",")?;
                let min_delta = self.number()?;
                self.expect(")")?;
                Ok(ProductSpec::RandomBipartite {
                    m,
                    n,
                    p,
                    seed,
                    min_delta,
                })
            }
            "gnp" => {
                self.expect("(")?;
                let n = self.number()?;
                self.expect(",")?;
                let p = self.number()?;
                self.expect(",")?;
                let seed = self.number()?;
                self.expect(",")?;
                let min_delta = self.number()?;
                self.expect(")")?;
                Ok(ProductSpec::RandomNonbipartite {
                    n,
                    p,
                    seed,
                    min_delta,
                })
            }
            "file" => {
                self.expect("(")?;
                let close = self
                    .rest()
                    .find(')')
                    .ok_or_else(|| self.error("unterminated file(...)"))?;
                let path = self.rest()[..close].trim().to_owned();
                self.pos += close + 1;
                if path.is_empty() {
                    return Err(self.error("empty file path"));
                }
                Ok(ProductSpec::File(PathBuf::from(path)))
            }
            "tilde" => {
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(",")?;
                let n = self.number()?;
                self.expect(")")?;
                Ok(ProductSpec::Tilde(Box::new(inner), n))
            }
            "" => Err(self.error("expected a graph family")),
            other => {
                self.pos = start;
                Err(self.error(&format!("unknown graph family `{other}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic_small;

    #[test]
    fn parses_products_left_associatively() {
        let s: ProductSpec = "cycle(3) x cycle(5) x complete(2)".parse().unwrap();
        assert_eq!(
            s,
            ProductSpec::Product(
                Box::new(ProductSpec::Product(
                    Box::new(ProductSpec::Cycle(3)),
                    Box::new(ProductSpec::Cycle(5))
                )),
                Box::new(ProductSpec::Complete(2))
            )
        );
        assert_eq!(s.to_string(), "cycle(3) x cycle(5) x complete(2)");
        let g = s.build().unwrap();
        assert_eq!((g.order(), g.size()), (30, 2 * 2 * 3 * 5));
        assert_eq!(s.odd_cycle_factors(), None);
        let odd: ProductSpec = "cycle(3)x cycle(5)".parse().unwrap();
        assert_eq!(odd.odd_cycle_factors(), Some(vec![3, 5]));
    }

    #[test]
    fn parses_every_family() {
        for text in [
            "kbip(2,3)",
            "path(4)",
            "petersen",
            "bip(3,4,0.5,7,1)",
            "gnp(6,0.5,3,2)",
            "tilde(kbip(2,3), 4)",
            "complete(3) x (cycle(3) x cycle(5))",
        ] {
            let s: ProductSpec = text.parse().unwrap();
            assert_eq!(s.to_string().parse::<ProductSpec>().unwrap(), s, "{text}");
            s.build().unwrap();
        }
    }

    #[test]
    fn tilde_expression_builds_layered_graph() {
        let g = "tilde(kbip(1,1), 3)"
            .parse::<ProductSpec>()
            .unwrap()
            .build()
            .unwrap();
        assert!(is_isomorphic_small(&g, &cycle(6).unwrap()).unwrap());
        assert!("tilde(cycle(5), 3)"
            .parse::<ProductSpec>()
            .unwrap()
            .build()
            .is_err());
    }

    #[test]
    fn rejects_malformed_expressions() {
        for text in [
            "",
            "cycle",
            "cycle(3",
            "cycle(3) x",
            "wheel(5)",
            "cycle(3) cycle(4)",
            "kbip(2)",
        ] {
            assert!(text.parse::<ProductSpec>().is_err(), "{text}");
        }
        assert!(matches!(
            "cycle(3) x wheel(5)".parse::<ProductSpec>(),
            Err(Error::Parse { offset: 11, .. })
        ));
    }

    #[test]
    fn file_leaves_read_both_formats() {
        let dir = std::env::temp_dir().join(format!("superkappa-expr-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let g6 = dir.join("c5.g6");
        std::fs::write(&g6, "Dhc\n").unwrap();
        let json = dir.join("k2.json");
        std::fs::write(&json, r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
        let spec: ProductSpec = format!("file({}) x file({})", g6.display(), json.display())
            .parse()
            .unwrap();
        let g = spec.build().unwrap();
        assert!(is_isomorphic_small(&g, &cycle(10).unwrap()).unwrap());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
