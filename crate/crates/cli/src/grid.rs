//! Parameter grids: `start:stop:count` (inclusive, evenly spaced) or a comma list.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let num = |t: &str| -> Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|_| format!("'{t}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{t}' is not finite"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            [start, stop, count] => {
                let (a, b) = (num(start)?, num(stop)?);
                let n: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| format!("grid count '{count}' is not a positive integer"))?;
                match n {
                    0 => Err("grid count must be >= 1".into()),
                    1 => Ok(Grid(vec![a])),
                    _ => Ok(Grid(
                        (0..n)
                            .map(|i| {
                                if i == n - 1 {
                                    b
                                } else {
                                    a + (b - a) * i as f64 / (n - 1) as f64
                                }
                            })
                            .collect(),
                    )),
                }
            }
            [_] => s.split(',').map(num).collect::<Result<Vec<_>, _>>().map(Grid),
            _ => Err(format!("'{s}' is neither start:stop:count nor a comma list")),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", items.join(","))
    }
}
