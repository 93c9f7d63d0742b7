use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};

/// Graph families with a fixed vertex and edge numbering.
///
/// * `Path n`: vertices `0..n`, edge `i` joins `i` and `i+1`.
/// * `Cycle n`: as `Path n` plus the closing edge `n-1`–`0` last.
/// * `Star t`: center `0`, leaf `i` on edge `i-1`.
/// * `Wheel n`: hub `0`, rim vertices `1..=n`; edge `i-1` is the spoke to
///   rim vertex `i` and edge `n+i-1` joins rim vertices `i` and `i+1 mod n`
///   (see [`WheelLayout::label`](super::WheelLayout::label) for `s_i`/`r_i`).
/// * `Caterpillar L, l_1..l_L`: spine vertices `0..L` joined in order by
///   edges `0..L-1`, then `l_j` pendant legs on spine vertex `j`, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Wheel,
    Caterpillar,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Wheel => "wheel",
            Family::Caterpillar => "caterpillar",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "star" => Ok(Family::Star),
            "wheel" => Ok(Family::Wheel),
            "caterpillar" => Ok(Family::Caterpillar),
            other => Err(GraphError::BadParams(format!("unknown family `{other}`"))),
        }
    }
}

fn single(family: Family, params: &[usize], min: usize) -> Result<usize, GraphError> {
    match params {
        [n] if *n >= min => Ok(*n),
        [n] => Err(GraphError::BadParams(format!(
            "{family} needs n >= {min}, got {n}"
        ))),
        _ => Err(GraphError::BadParams(format!(
            "{family} takes exactly one parameter"
        ))),
    }
}

pub fn generate(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    match family {
        Family::Path => {
            let n = single(family, params, 1)?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::new(n, &edges)
        }
        Family::Cycle => {
            let n = single(family, params, 3)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        Family::Star => {
            let t = single(family, params, 1)?;
            let edges: Vec<_> = (1..=t).map(|i| (0, i)).collect();
            Graph::new(t + 1, &edges)
        }
        Family::Wheel => {
            let n = single(family, params, 3)?;
            let spokes = (1..=n).map(|i| (0, i));
            let rim = (1..=n).map(|i| (i, i % n + 1));
            let edges: Vec<_> = spokes.chain(rim).collect();
            Graph::new(n + 1, &edges)
        }
        Family::Caterpillar => {
            let (&len, legs) = params
                .split_first()
                .ok_or_else(|| GraphError::BadParams("caterpillar needs a spine length".into()))?;
            if len == 0 {
                return Err(GraphError::BadParams("spine length must be >= 1".into()));
            }
            if legs.len() != len {
                return Err(GraphError::BadParams(format!(
                    "caterpillar with spine length {len} needs {len} leg counts, got {}",
                    legs.len()
                )));
            }
            let mut edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
            let mut next = len;
            for (j, &count) in legs.iter().enumerate() {
                for _ in 0..count {
                    edges.push((j, next));
                    next += 1;
                }
            }
            Graph::new(next, &edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_numbering() {
        let w4 = generate(Family::Wheel, &[4]).unwrap();
        assert_eq!(w4.vertex_count(), 5);
        assert_eq!(w4.edge_count(), 8);
        assert_eq!(w4.degree(0), 4);
        assert_eq!(w4.endpoints(0), (0, 1));
        assert_eq!(w4.endpoints(4), (1, 2));
        assert_eq!(w4.endpoints(7), (1, 4));
    }

    #[test]
    fn small_families() {
        let p2 = generate(Family::Path, &[2]).unwrap();
        assert_eq!(p2.edge_count(), 1);
        let cat = generate(Family::Caterpillar, &[3, 3, 0, 3]).unwrap();
        assert_eq!(cat.edge_count(), 8);
        assert_eq!(cat.max_degree(), 4);
        assert!(cat.is_tree());
    }

    #[test]
    fn bad_params() {
        assert!(generate(Family::Cycle, &[2]).is_err());
        assert!(generate(Family::Wheel, &[]).is_err());
        assert!(generate(Family::Star, &[0]).is_err());
        assert!(generate(Family::Caterpillar, &[2, 1]).is_err());
        assert!("blob".parse::<Family>().is_err());
    }
}
