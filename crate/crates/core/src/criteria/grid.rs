use super::{CriteriaError, Criterion, Positioning, TagKind, WordFilter};

/// Finite parameter sets whose Cartesian product is a list of criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionGrid {
    pub orders: Vec<usize>,
    pub tags: Vec<TagKind>,
    pub positionings: Vec<Positioning>,
    pub filters: Vec<WordFilter>,
    pub sizes: Vec<usize>,
}

impl Default for CriterionGrid {
    /// Unigrams to trigrams, four tags, three positionings, `all` and
    /// `content`, sizes 1 to 8: 576 criteria.
    fn default() -> Self {
        CriterionGrid {
            orders: vec![1, 2, 3],
            tags: TagKind::ALL.to_vec(),
            positionings: Positioning::ALL.to_vec(),
            filters: vec![WordFilter::All, WordFilter::Content],
            sizes: (1..=8).collect(),
        }
    }
}

impl CriterionGrid {
    pub fn len(&self) -> usize {
        self.orders.len() * self.tags.len() * self.positionings.len() * self.filters.len() * self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All criteria of the grid, ordered by n-gram order, then tag, then
/// positioning, then filter, then size.
pub fn enumerate_grid(grid: &CriterionGrid) -> Result<Vec<Criterion>, CriteriaError> {
    let checks: [(bool, &'static str); 5] = [
        (grid.orders.is_empty(), "n-gram orders"),
        (grid.tags.is_empty(), "tags"),
        (grid.positionings.is_empty(), "positionings"),
        (grid.filters.is_empty(), "filters"),
        (grid.sizes.is_empty(), "context sizes"),
    ];
    if let Some((_, what)) = checks.iter().find(|(empty, _)| *empty) {
        return Err(CriteriaError::EmptyGrid(what));
    }

    let mut out = Vec::with_capacity(grid.len());
    for &order in &grid.orders {
        for &tag in &grid.tags {
            for &positioning in &grid.positionings {
                for &filter in &grid.filters {
                    for &size in &grid.sizes {
                        let c = Criterion::new(order, tag, positioning, filter, size);
                        c.validate()?;
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn parse_list<T, F>(value: &str, mut parse: F) -> Result<Vec<T>, String>
where
    F: FnMut(&str) -> Result<Vec<T>, String>,
{
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        out.extend(parse(item)?);
    }
    Ok(out)
}

fn parse_numbers(item: &str) -> Result<Vec<usize>, String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad number {s:?}"));
    match item.split_once('-') {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {item:?}"));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(item)?]),
    }
}

/// Reads a grid config: `key = value` lines with keys `orders`, `tags`,
/// `positionings`, `filters` and `sizes`. Values are comma-separated;
/// numbers also accept ranges such as `1-8`. Missing keys keep the default
/// grid's values.
pub fn parse_grid_config(text: &str) -> Result<CriterionGrid, CriteriaError> {
    let mut grid = CriterionGrid::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CriteriaError::GridConfig {
            line: idx + 1,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
        match key {
            "orders" => grid.orders = parse_list(value, parse_numbers).map_err(err)?,
            "sizes" => grid.sizes = parse_list(value, parse_numbers).map_err(err)?,
            "tags" => {
                grid.tags = parse_list(value, |s| Ok(vec![s.parse::<TagKind>().map_err(|t| format!("unknown tag {t:?}"))?]))
                    .map_err(err)?
            }
            "positionings" => {
                grid.positionings = parse_list(value, |s| {
                    Ok(vec![s
                        .parse::<Positioning>()
                        .map_err(|t| format!("unknown positioning {t:?}"))?])
                })
                .map_err(err)?
            }
            "filters" => {
                grid.filters = parse_list(value, |s| {
                    Ok(vec![s.parse::<WordFilter>().map_err(|t| format!("unknown filter {t:?}"))?])
                })
                .map_err(err)?
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    Ok(grid)
}
