//! Generators for the known equilibrium and lower-bound constructions, plus
//! the two hardness-reduction builders used as solver testbeds.
//!
//! Where a construction leaves edge ownership open (clique edges, cross
//! edges between groups), a deterministic lower-index rule fixes it:
//! stability checks are ownership-sensitive, so the rule must be pinned.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::game::{GameSpec, StrategyProfile, Variant};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    NotPrime(u64),
    GadgetMismatch(String),
    BadParams(String),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::NotPrime(p) => write!(f, "{p} is not a prime (>= 3) "),
            GenError::GadgetMismatch(why) => write!(f, "gadget rejected: {why}"),
            GenError::BadParams(why) => write!(f, "bad parameters: {why}"),
        }
    }
}

/// Machine-checkable claims attached to a generated instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub stable: Option<bool>,
    pub social_cost: Option<u64>,
    pub diameter: Option<u32>,
    /// Social optimum for instances where the uniform formulas do not apply.
    pub optimum: Option<u64>,
}

/// A generated game: spec + profile + provenance + expected claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub params: Vec<(String, i64)>,
    pub spec: GameSpec,
    pub profile: StrategyProfile,
    pub expected: Expected,
}

impl Instance {
    pub fn provenance(&self) -> String {
        let mut s = self.name.clone();
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarOwner {
    Center,
    Leaves,
}

/// Spanning star `K_{1,n-1}` with node 0 as center.
pub fn star(n: usize, owner: StarOwner, variant: Variant, bound: u64) -> Result<Instance, GenError> {
    if n < 2 {
        return Err(GenError::BadParams(format!("star needs n >= 2, got {n}")));
    }
    if bound == 0 {
        return Err(GenError::BadParams(String::from("bound must be positive")));
    }
    let mut buys = vec![Vec::new(); n];
    match owner {
        StarOwner::Center => buys[0] = (1..n).collect(),
        StarOwner::Leaves => {
            for b in buys.iter_mut().skip(1) {
                b.push(0);
            }
        }
    }
    let stable = match variant {
        Variant::Max => {
            if bound >= 2 {
                Some(true)
            } else {
                Some(n <= 2)
            }
        }
        Variant::Sum => {
            if bound >= 2 * n as u64 - 3 {
                Some(true)
            } else {
                None
            }
        }
    };
    Ok(Instance {
        name: String::from("star"),
        params: vec![(String::from("n"), n as i64)],
        spec: GameSpec::uniform(variant, n, bound).expect("bound validated by caller"),
        profile: StrategyProfile::from_buys(buys).expect("star profile is valid"),
        expected: Expected {
            stable,
            social_cost: Some(n as u64 - 1),
            diameter: Some(if n == 2 { 1 } else { 2 }),
            optimum: None,
        },
    })
}

/// Complete graph `K_n`, every edge bought by its lower-indexed endpoint.
pub fn complete(n: usize, variant: Variant, bound: u64) -> Result<Instance, GenError> {
    if n < 2 {
        return Err(GenError::BadParams(format!("complete needs n >= 2, got {n}")));
    }
    if bound == 0 {
        return Err(GenError::BadParams(String::from("bound must be positive")));
    }
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            buys[u].push(v);
        }
    }
    let stable = match variant {
        Variant::Max => Some(bound == 1 || n == 2),
        Variant::Sum => Some(bound == n as u64 - 1),
    };
    Ok(Instance {
        name: String::from("complete"),
        params: vec![(String::from("n"), n as i64)],
        spec: GameSpec::uniform(variant, n, bound).expect("bound validated by caller"),
        profile: StrategyProfile::from_buys(buys).expect("complete profile is valid"),
        expected: Expected {
            stable,
            social_cost: Some((n * (n - 1) / 2) as u64),
            diameter: Some(1),
            optimum: None,
        },
    })
}

/// Clique of `k` nodes, each carrying two pendant 2-paths, with the
/// non-uniform bounds that make it stable: max bounds 3 (clique) / 5
/// (pendants); sum bounds `11k - 5` (clique, its exact broadcast cost) /
/// `n^2` (pendants). Pendant edges are bought inward (tip buys towards the
/// middle node, middle node towards the clique); clique edges go to the
/// lower-indexed endpoint.
pub fn clique_pendant(k: usize, variant: Variant) -> Result<Instance, GenError> {
    if k < 3 {
        return Err(GenError::BadParams(format!("clique-pendant needs k >= 3, got {k}")));
    }
    let n = 5 * k;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..k {
        for j in i + 1..k {
            buys[i].push(j);
        }
        let base = k + 4 * i;
        // two paths i - (base) - (base+1) and i - (base+2) - (base+3)
        buys[base].push(i);
        buys[base + 1].push(base);
        buys[base + 2].push(i);
        buys[base + 3].push(base + 2);
    }
    let bounds: Vec<u64> = (0..n)
        .map(|v| match (variant, v < k) {
            (Variant::Max, true) => 3,
            (Variant::Max, false) => 5,
            (Variant::Sum, true) => 11 * k as u64 - 5,
            (Variant::Sum, false) => (n as u64) * (n as u64),
        })
        .collect();
    Ok(Instance {
        name: String::from("clique-pendant"),
        params: vec![(String::from("k"), k as i64)],
        spec: GameSpec::new(variant, bounds).expect("bounds are positive"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: Some(true),
            social_cost: Some((k * (k - 1) / 2 + 4 * k) as u64),
            diameter: Some(5),
            optimum: Some(n as u64 - 1),
        },
    })
}

/// Path of `2R` nodes plus `h` hub players, each buying edges to both path
/// ends; uniform max bound `R`. Diameter `R`, social cost `(2R-1) + 2h`.
pub fn path_hub(r: usize, h: usize) -> Result<Instance, GenError> {
    if r < 2 {
        return Err(GenError::BadParams(format!("path-hub needs R >= 2, got {r}")));
    }
    if h < 1 {
        return Err(GenError::BadParams(format!("path-hub needs h >= 1, got {h}")));
    }
    let n = 2 * r + h;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..2 * r - 1 {
        buys[j].push(j + 1);
    }
    for v in 2 * r..n {
        buys[v].push(0);
        buys[v].push(2 * r - 1);
    }
    Ok(Instance {
        name: String::from("path-hub"),
        params: vec![(String::from("R"), r as i64), (String::from("h"), h as i64)],
        spec: GameSpec::uniform(Variant::Max, n, r as u64).expect("R >= 2"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: Some(true),
            social_cost: Some((2 * r - 1 + 2 * h) as u64),
            diameter: Some(r as u32),
            optimum: None,
        },
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Node layout of the diameter-2 prime construction on `2p^2 + p + 2` nodes.
#[derive(Debug, Clone, Copy)]
pub struct PrimeTreeLayout {
    pub p: usize,
}

impl PrimeTreeLayout {
    pub fn root(&self) -> usize {
        0
    }
    pub fn branch(&self, i: usize) -> usize {
        1 + i
    }
    pub fn tree_leaf(&self, i: usize, j: usize) -> usize {
        1 + self.p + i * self.p + j
    }
    pub fn star_center(&self) -> usize {
        1 + self.p + self.p * self.p
    }
    pub fn star_leaf(&self, i: usize, j: usize) -> usize {
        self.star_center() + 1 + i * self.p + j
    }
    pub fn n(&self) -> usize {
        2 * self.p * self.p + self.p + 2
    }
}

/// Diameter-2 construction for a prime `p >= 3`: a complete `p`-ary tree of
/// height 2 and a star with `p^2` leaves, the leaf groups clique-connected,
/// with cross edges wired by modular arithmetic so that every leaf group of
/// the star dominates the tree leaves. Uniform max bound 2.
///
/// Ownership: the root and the tree leaves buy every edge incident to them
/// (so the cross edges belong to the tree-leaf endpoints), star leaves buy
/// their star edge, and the remaining clique edges go to the lower-indexed
/// endpoint.
pub fn prime_tree(p: usize) -> Result<Instance, GenError> {
    if p < 3 || !is_prime(p as u64) {
        return Err(GenError::NotPrime(p as u64));
    }
    let lay = PrimeTreeLayout { p };
    let n = lay.n();
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];

    // root buys its tree edges and the bridge to the star center
    for i in 0..p {
        buys[lay.root()].push(lay.branch(i));
    }
    buys[lay.root()].push(lay.star_center());
    // tree leaves buy the parent edge and all their cross edges
    for i in 0..p {
        for j in 0..p {
            let v = lay.tree_leaf(i, j);
            buys[v].push(lay.branch(i));
            for g in 0..p {
                // star leaf (g, m) is adjacent to tree leaf (i, j) iff m + i*g = j (mod p)
                let m = (j + p - (i * g) % p) % p;
                buys[v].push(lay.star_leaf(g, m));
            }
        }
    }
    // star leaves buy the edge towards the star center
    for i in 0..p {
        for j in 0..p {
            buys[lay.star_leaf(i, j)].push(lay.star_center());
        }
    }
    // cliques on the branch set and on each star-leaf group: lower index buys
    for i in 0..p {
        for j in i + 1..p {
            buys[lay.branch(i)].push(lay.branch(j));
        }
    }
    for g in 0..p {
        for a in 0..p {
            for b in a + 1..p {
                buys[lay.star_leaf(g, a)].push(lay.star_leaf(g, b));
            }
        }
    }

    let pu = p as u64;
    let edges = (pu + pu * pu) + pu * pu + 1 + pu * (pu - 1) / 2 + pu * pu * (pu - 1) / 2
        + pu * pu * pu;
    Ok(Instance {
        name: String::from("prime-tree"),
        params: vec![(String::from("p"), p as i64)],
        spec: GameSpec::uniform(Variant::Max, n, 2).expect("bound 2"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: Some(true),
            social_cost: Some(edges),
            diameter: Some(2),
            optimum: None,
        },
    })
}

/// Complete multipartite construction for the sum variant with bound
/// `B = n - 1 + k`: `h = n / (k+1)` groups of `k+1` nodes plus a remainder
/// group of `t = n mod (k+1)` nodes that buy nothing. Cross edges are owned
/// by the endpoint outside the remainder group when applicable, otherwise by
/// the endpoint in the lower-indexed group.
pub fn multipartite_sum(n: usize, k: usize) -> Result<Instance, GenError> {
    if n < 2 || k > n - 2 {
        return Err(GenError::BadParams(format!(
            "multipartite needs n >= 2 and 0 <= k <= n-2, got n={n} k={k}"
        )));
    }
    let group_size = k + 1;
    let h = n / group_size;
    let full = h * group_size; // ids below this are in groups 1..=h, the rest in the remainder
    let group_of = |v: usize| if v < full { v / group_size } else { h };
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let (gu, gv) = (group_of(u), group_of(v));
            if gu == gv {
                continue;
            }
            // remainder group never buys
            if gv == h {
                buys[u].push(v);
            } else {
                buys[u.min(v)].push(u.max(v));
            }
        }
    }
    let t = n - full;
    let edges = (n * n - h * group_size * group_size - t * t) / 2;
    Ok(Instance {
        name: String::from("multipartite"),
        params: vec![(String::from("n"), n as i64), (String::from("k"), k as i64)],
        spec: GameSpec::uniform(Variant::Sum, n, (n - 1 + k) as u64).expect("bound >= 1"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: Some(true),
            social_cost: Some(edges as u64),
            diameter: Some(if h == 1 && t == 0 { 1 } else { 2 }),
            optimum: None,
        },
    })
}

/// Broadcast costs of the ring family computed by closed recurrences rather
/// than BFS: `spoke_broadcast` is the broadcast cost of every degree-two
/// spoke player, `hub_broadcast` of every hub, and `single_edge_floor` is a
/// floor on the broadcast cost any spoke can reach after deviating to a
/// single edge. The profile is stable for every bound in
/// `[spoke_broadcast, single_edge_floor)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumFamilyCosts {
    pub k: usize,
    pub h: usize,
    pub n: usize,
    pub spoke_broadcast: u64,
    pub hub_broadcast: u64,
    pub single_edge_floor: u64,
}

impl SumFamilyCosts {
    pub fn stability_window(&self) -> (u64, u64) {
        (self.spoke_broadcast, self.single_edge_floor)
    }
}

/// Recurrence evaluation of the ring-family broadcast costs.
pub fn ring_family_costs(k: usize, h: usize) -> Result<SumFamilyCosts, GenError> {
    if k < 2 || h < 1 {
        return Err(GenError::BadParams(format!("ring needs k >= 2 and h >= 1, got k={k} h={h}")));
    }
    let nk = |k: usize| ((h + 1) * k) as u64;
    let mut spoke = 2 * nk(2) - 4;
    let mut hub = nk(2);
    for j in 2..k {
        let step = nk(j);
        if (j + 1) % 2 == 0 {
            spoke += step + h as u64;
            hub += step + 1;
        } else {
            spoke += step + 1;
            hub += step + h as u64;
        }
    }
    let n = (h + 1) * k;
    Ok(SumFamilyCosts {
        k,
        h,
        n,
        spoke_broadcast: spoke,
        hub_broadcast: hub,
        single_edge_floor: hub + n as u64 - 1 - k as u64,
    })
}

/// Ring family: `k` hubs buying nothing and, for each ring position `i`,
/// `h` spoke players each buying edges to hubs `i` and `i+1 (mod k)`.
/// Hubs get ids `0..k`; the spokes for position `i` follow at
/// `k + i*h .. k + (i+1)*h`.
pub fn ring_family(k: usize, h: usize, bound: u64) -> Result<Instance, GenError> {
    let costs = ring_family_costs(k, h)?;
    let n = costs.n;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..k {
        for c in 0..h {
            let v = k + i * h + c;
            buys[v].push(i);
            buys[v].push((i + 1) % k);
        }
    }
    let (lo, hi) = costs.stability_window();
    let stable = if bound < lo {
        Some(false)
    } else if bound < hi {
        Some(true)
    } else {
        None // past the proven window; verify empirically
    };
    Ok(Instance {
        name: String::from("ring"),
        params: vec![(String::from("k"), k as i64), (String::from("h"), h as i64)],
        spec: GameSpec::uniform(Variant::Sum, n, bound).expect("bound >= 1"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable,
            social_cost: Some(2 * (k * h) as u64),
            diameter: Some(k as u32),
            optimum: None,
        },
    })
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes. 3-regular,
/// diameter 2, self-centered.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e).expect("fixed adjacency is valid")
}

/// A `d`-regular self-centered gadget of diameter `R` plus `n_pendants`
/// pendant players, each buying `d` edges into the gadget, spread round-robin
/// over the gadget nodes. Gadget edges go to the lower-indexed endpoint.
/// Stability is left to empirical verification.
pub fn gadget_with_pendants(
    gadget: &Graph,
    n_pendants: usize,
    r: u64,
) -> Result<Instance, GenError> {
    let g = gadget.n();
    if g == 0 {
        return Err(GenError::GadgetMismatch(String::from("gadget is empty")));
    }
    let d = gadget.degree(0);
    if (0..g).any(|v| gadget.degree(v) != d) {
        return Err(GenError::GadgetMismatch(String::from("gadget is not regular")));
    }
    match gadget.diameter() {
        Some(diam) if u64::from(diam) == r => {}
        Some(diam) => {
            return Err(GenError::GadgetMismatch(format!(
                "gadget diameter is {diam}, bound is {r}"
            )))
        }
        None => return Err(GenError::GadgetMismatch(String::from("gadget is disconnected"))),
    }
    if !gadget.is_self_centered() {
        return Err(GenError::GadgetMismatch(String::from("gadget is not self-centered")));
    }
    let n = g + n_pendants;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &gadget.edges() {
        buys[u].push(v);
    }
    for j in 0..n_pendants {
        for t in 0..d {
            buys[g + j].push((d * j + t) % g);
        }
    }
    Ok(Instance {
        name: String::from("gadget"),
        params: vec![
            (String::from("gadget_n"), g as i64),
            (String::from("pendants"), n_pendants as i64),
            (String::from("R"), r as i64),
        ],
        spec: GameSpec::uniform(Variant::Max, n, r).expect("bound >= 1"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: None,
            social_cost: Some((gadget.edge_count() + n_pendants * d) as u64),
            diameter: None,
            optimum: None,
        },
    })
}

/// Max-variant hardness reduction: a copy of `g_prime` with two pendant
/// paths of length `R - 2` on every vertex, plus one isolated player `u`
/// (the last id). The best response of `u` has exactly the size of a minimum
/// dominating set of `g_prime`.
pub fn reduction_from_dominating_set(g_prime: &Graph, r: usize) -> Result<Instance, GenError> {
    if r < 2 {
        return Err(GenError::BadParams(format!("reduction needs R >= 2, got {r}")));
    }
    if !g_prime.is_connected() || g_prime.n() == 0 {
        return Err(GenError::BadParams(String::from("reduction input must be connected")));
    }
    let big_n = g_prime.n();
    let tail = r - 2;
    let n = big_n + 2 * big_n * tail + 1;
    let player_u = n - 1;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &g_prime.edges() {
        buys[a].push(b);
    }
    for v in 0..big_n {
        for side in 0..2 {
            let start = big_n + v * 2 * tail + side * tail;
            let mut prev = v;
            for step in 0..tail {
                let node = start + step;
                buys[prev.min(node)].push(prev.max(node));
                prev = node;
            }
        }
    }
    Ok(Instance {
        name: String::from("reduce-domset"),
        params: vec![
            (String::from("N"), big_n as i64),
            (String::from("R"), r as i64),
            (String::from("u"), player_u as i64),
        ],
        spec: GameSpec::uniform(Variant::Max, n, r as u64).expect("R >= 2"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected {
            stable: Some(false), // u sits out of bound by construction
            social_cost: None,
            diameter: None,
            optimum: None,
        },
    })
}

/// Sum-variant hardness reduction: `g_prime` plus one isolated player `u`
/// (the last id) with bound `B = beta + N`. The best response of `u` is the
/// smallest `k` such that `g_prime` has a `k`-median of cost at most `beta`.
pub fn reduction_from_kmedian(g_prime: &Graph, beta: u64) -> Result<Instance, GenError> {
    if !g_prime.is_connected() || g_prime.n() == 0 {
        return Err(GenError::BadParams(String::from("reduction input must be connected")));
    }
    let big_n = g_prime.n();
    let n = big_n + 1;
    let mut buys: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &g_prime.edges() {
        buys[a].push(b);
    }
    Ok(Instance {
        name: String::from("reduce-kmedian"),
        params: vec![
            (String::from("N"), big_n as i64),
            (String::from("beta"), beta as i64),
            (String::from("u"), big_n as i64),
        ],
        spec: GameSpec::uniform(Variant::Sum, n, beta + big_n as u64).expect("bound >= 1"),
        profile: StrategyProfile::from_buys(buys).expect("profile is valid"),
        expected: Expected { stable: Some(false), social_cost: None, diameter: None, optimum: None },
    })
}
