//! Named rings: the thirteen local rings of order at most 8, addressable as
//! `local8/<NAME>`, and a default battery of small direct products.
//!
//! | name            | ring                     | order |
//! |-----------------|--------------------------|-------|
//! | `Z2`            | Z2                       | 2     |
//! | `Z3`            | Z3                       | 3     |
//! | `F4`            | GF(4)                    | 4     |
//! | `Z4`            | Z4                       | 4     |
//! | `Z2x2`          | Z2[x]/(x^2)              | 4     |
//! | `Z5`            | Z5                       | 5     |
//! | `Z7`            | Z7                       | 7     |
//! | `F8`            | GF(8)                    | 8     |
//! | `Z8`            | Z8                       | 8     |
//! | `Z2x3`          | Z2[x]/(x^3)              | 8     |
//! | `Z2xy_x2_xy_y2` | Z2[x,y]/(x^2, xy, y^2)   | 8     |
//! | `Z4x_2x_x2`     | Z4[x]/(2x, x^2)          | 8     |
//! | `Z4x_2x_x2m2`   | Z4[x]/(2x, x^2-2)        | 8     |

use super::spec::RingSpec;

const LOCAL_RINGS: [(&str, &str); 13] = [
    ("Z2", "Z2"),
    ("Z3", "Z3"),
    ("F4", "GF(4)"),
    ("Z4", "Z4"),
    ("Z2x2", "Z2[x]/(x^2)"),
    ("Z5", "Z5"),
    ("Z7", "Z7"),
    ("F8", "GF(8)"),
    ("Z8", "Z8"),
    ("Z2x3", "Z2[x]/(x^3)"),
    ("Z2xy_x2_xy_y2", "Z2[x,y]/(x^2, xy, y^2)"),
    ("Z4x_2x_x2", "Z4[x]/(2x, x^2)"),
    ("Z4x_2x_x2m2", "Z4[x]/(2x, x^2-2)"),
];

const DEFAULT_PRODUCTS: [&str; 19] = [
    "Z2 x Z2",
    "Z2 x Z3",
    "Z3 x Z3",
    "Z2 x Z4",
    "Z2 x local8/Z2x2",
    "Z2 x Z2 x Z2",
    "Z2 x Z2 x Z2 x Z2",
    "Z2 x Z2 x Z3",
    "Z2 x GF(4)",
    "Z2 x Z5",
    "Z2 x local8/Z2x3",
    "Z2 x local8/Z4x_2x_x2m2",
    "Z2 x local8/Z4x_2x_x2",
    "Z2 x Z7",
    "Z2 x GF(8)",
    "Z3 x GF(4)",
    "Z2 x Z2 x Z5",
    "Z2 x Z2 x Z7",
    "Z2 x Z2 x GF(4)",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogKind {
    Local,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: RingSpec,
    pub kind: CatalogKind,
}

/// Underlying construction of a `local8/` catalog name.
pub fn lookup(name: &str) -> Option<RingSpec> {
    LOCAL_RINGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.parse().expect("catalog entries parse"))
}

pub fn local_rings() -> Vec<CatalogEntry> {
    LOCAL_RINGS
        .iter()
        .map(|(name, _)| CatalogEntry {
            name: format!("local8/{name}"),
            spec: RingSpec::Catalog((*name).to_string()),
            kind: CatalogKind::Local,
        })
        .collect()
}

pub fn default_products() -> Vec<CatalogEntry> {
    DEFAULT_PRODUCTS
        .iter()
        .map(|text| CatalogEntry {
            name: (*text).to_string(),
            spec: text.parse().expect("battery entries parse"),
            kind: CatalogKind::Product,
        })
        .collect()
}

/// All thirteen local rings followed by the default product battery.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut all = local_rings();
    all.extend(default_products());
    all
}

/// Named verification suites: `table1`, `products-small`, `all`.
pub fn suite(name: &str) -> Option<Vec<RingSpec>> {
    let entries = match name {
        "table1" => local_rings(),
        "products-small" => default_products(),
        "all" => catalog(),
        _ => return None,
    };
    Some(entries.into_iter().map(|e| e.spec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn local_orders() -> Vec<usize> {
        local_rings()
            .iter()
            .map(|e| build_ring(&e.spec).unwrap().order())
            .collect()
    }

    #[test]
    fn thirteen_local_rings() {
        let entries = local_rings();
        assert_eq!(entries.len(), 13);
        for e in &entries {
            let r = build_ring(&e.spec).unwrap();
            assert!(r.is_local(), "{}", e.name);
            assert_eq!(r.local_factor_count().unwrap(), 1, "{}", e.name);
        }
    }

    #[test]
    fn counts_by_order() {
        let orders = local_orders();
        let count = |n| orders.iter().filter(|&&o| o == n).count();
        assert_eq!(count(8), 6);
        assert_eq!(count(4), 3);
        assert_eq!(count(6), 0);
        assert_eq!(count(2) + count(3) + count(5) + count(7), 4);
    }

    #[test]
    fn battery_builds() {
        for e in default_products() {
            let r = build_ring(&e.spec).unwrap();
            assert!(r.local_factor_count().unwrap() >= 2, "{}", e.name);
        }
    }

    #[test]
    fn suites() {
        assert_eq!(suite("table1").unwrap().len(), 13);
        assert_eq!(suite("all").unwrap().len(), 13 + DEFAULT_PRODUCTS.len());
        assert!(suite("nope").is_none());
    }
}
