//! Exhaustive audits of order and cycle properties inside coset-complex
//! balls.
//!
//! Every scan restricts its *verdict-carrying* tuples to vertices whose
//! margin meets a threshold: such vertices have a member element deep
//! enough inside the ball that the adjacencies the verdict depends on are
//! faithfully represented.  Witness vertices (central vertices, fillers,
//! bounds) are searched without a margin requirement — an existence result
//! found near the horizon is still an existence result.  Scans parallelize
//! over their outermost vertex and merge partial reports in vertex order,
//! so reports are deterministic.

use rayon::prelude::*;
use serde_json::json;

use super::ball::{deligne_ball, DeligneBall};
use super::coxtable::Diagram;
use super::ArtinError;
use crate::coxmodel;
use crate::report::{CheckReport, RunReport};

/// Margin required of verdict-carrying vertices in the order, 4-cycle, and
/// bowtie/flag scans.
pub const DEFAULT_MARGIN: i64 = 2;
/// Margin for 6-cycle scans, one deeper because the configurations span
/// three coset steps.
pub const SIX_CYCLE_MARGIN: i64 = 3;

fn witness(ball: &DeligneBall, kind: &str, ids: &[u32]) -> serde_json::Value {
    json!({
        "kind": kind,
        "vertices": ids
            .iter()
            .map(|&v| {
                json!({
                    "id": v,
                    "face": ball.face(v).to_string(),
                    "s_type": ball.s_type(v),
                    "real": ball.is_real(v),
                    "margin": ball.margin(v),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn guarded_vertices(ball: &DeligneBall, margin: i64) -> Vec<u32> {
    (0..ball.len() as u32)
        .filter(|&v| ball.margin(v) >= margin)
        .collect()
}

fn min_margin(ball: &DeligneBall, ids: &[u32]) -> Option<i64> {
    ids.iter().map(|&v| ball.margin(v)).min()
}

/// Runs `scan` once per start vertex in parallel and merges the partial
/// reports in start order.
fn par_scan<F>(name: &str, starts: &[u32], scan: F) -> CheckReport
where
    F: Fn(u32, &mut CheckReport) + Sync,
{
    let partials: Vec<CheckReport> = starts
        .par_iter()
        .map(|&v| {
            let mut report = CheckReport::new(name);
            scan(v, &mut report);
            report
        })
        .collect();
    let mut total = CheckReport::new(name);
    for partial in partials {
        total.merge(partial);
    }
    total
}

/// Audits every mixed-sign edge between real vertices: the two supports
/// must be disjoint, the non-negative endpoint must have the smaller level
/// type, and the subdividing fake vertex must exist and carry the combined
/// midpoint pattern.  Exhaustive — no margin guard.
pub fn check_mixed_real_edges(ball: &DeligneBall) -> CheckReport {
    let starts: Vec<u32> = (0..ball.real_count() as u32).collect();
    par_scan("mixed_real_edges", &starts, |a, report| {
        for &b in ball.u_neighbors(a) {
            if b <= a {
                continue;
            }
            let (fa, fb) = (ball.face(a), ball.face(b));
            if fa.is_non_negative() == fb.is_non_negative() {
                continue;
            }
            let (plus, minus) = if fa.is_non_negative() { (a, b) } else { (b, a) };
            let margin = min_margin(ball, &[a, b]);
            let pattern =
                coxmodel::u_adjacent(ball.face(plus), ball.face(minus)).expect("real patterns");
            let fake = ball.find_fake(a, b);
            let ok = match (&pattern, fake) {
                ((true, Some(mid)), Some(f)) => {
                    ball.face(f) == mid
                        && ball.vertex(f).endpoints() == Some((plus, minus))
                        && ball.u_type(plus) < ball.u_type(minus)
                }
                _ => false,
            };
            if ok {
                report.record(margin);
            } else {
                report.violation(margin, witness(ball, "mixed_edge", &[plus, minus]));
            }
        }
    })
}

/// Audits the chain description of the subdivided order between fake
/// vertices: `v ≤ w` holds exactly when `v⁺ ≤ᵤ w⁺ ≤ᵤ w⁻ ≤ᵤ v⁻`, checked
/// over ordered pairs of margin-guarded fakes.
pub fn check_chain_of_fake(ball: &DeligneBall, margin: i64) -> CheckReport {
    let fakes: Vec<u32> = (ball.real_count() as u32..ball.len() as u32)
        .filter(|&v| ball.margin(v) >= margin)
        .collect();
    let all = fakes.clone();
    par_scan("chain_of_fake", &fakes, move |v, report| {
        let (vp, vm) = ball.vertex(v).endpoints().expect("fake endpoints");
        for &w in &all {
            if w == v {
                continue;
            }
            let (wp, wm) = ball.vertex(w).endpoints().expect("fake endpoints");
            let subdivided = ball.s_lt(v, w);
            let chain = ball.u_le(vp, wp) && ball.u_le(wp, wm) && ball.u_le(wm, vm);
            let margin_rec = min_margin(ball, &[v, w]);
            if subdivided == chain {
                report.record(margin_rec);
            } else {
                report.violation(margin_rec, witness(ball, "chain_of_fake", &[v, w, vp, vm, wp, wm]));
            }
        }
    })
}

/// Audits that the subdivided relation is a partial order on the guarded
/// part of the ball: no two adjacent guarded vertices share an s-type
/// (antisymmetry), and `v < w < z` forces `v < z` (transitivity).
pub fn check_partial_order_ball(ball: &DeligneBall, margin: i64) -> CheckReport {
    let guarded = guarded_vertices(ball, margin);
    par_scan("partial_order", &guarded, |w, report| {
        for &b in ball.s_neighbors(w) {
            if b > w && ball.margin(b) >= margin {
                let margin_rec = min_margin(ball, &[w, b]);
                if ball.s_type(w) == ball.s_type(b) {
                    report.violation(margin_rec, witness(ball, "antisymmetry", &[w, b]));
                } else {
                    report.record(margin_rec);
                }
            }
        }
        let nbrs = ball.s_neighbors(w);
        for &v in nbrs {
            if ball.margin(v) < margin || ball.s_type(v) >= ball.s_type(w) {
                continue;
            }
            for &z in nbrs {
                if ball.margin(z) < margin || ball.s_type(z) <= ball.s_type(w) {
                    continue;
                }
                let margin_rec = min_margin(ball, &[v, w, z]);
                if ball.s_lt(v, z) {
                    report.record(margin_rec);
                } else {
                    report.violation(margin_rec, witness(ball, "transitivity", &[v, w, z]));
                }
            }
        }
    })
}

fn adjacent_or_equal(ball: &DeligneBall, a: u32, b: u32) -> bool {
    a == b || ball.s_adjacent(a, b)
}

/// Audits that every embedded 4-cycle with s-types `1,n,1,n` whose four
/// vertices are margin-guarded has a central vertex, i.e. one s-adjacent or
/// equal to all four corners.
pub fn check_4cycles(ball: &DeligneBall, margin: i64) -> CheckReport {
    let n = ball.n();
    let tops: Vec<u32> = guarded_vertices(ball, margin)
        .into_iter()
        .filter(|&v| ball.s_type(v) == n)
        .collect();
    par_scan("four_cycles", &tops, |w1, report| {
        let level1: Vec<u32> = ball
            .s_neighbors(w1)
            .iter()
            .copied()
            .filter(|&v| ball.s_type(v) == 1 && ball.margin(v) >= margin)
            .collect();
        for (i, &v1) in level1.iter().enumerate() {
            for &v2 in level1.iter().skip(i + 1) {
                for &w2 in ball.s_neighbors(v1) {
                    if w2 <= w1
                        || ball.s_type(w2) != n
                        || ball.margin(w2) < margin
                        || !ball.s_adjacent(v2, w2)
                    {
                        continue;
                    }
                    let cycle = [v1, w1, v2, w2];
                    let margin_rec = min_margin(ball, &cycle);
                    let central = std::iter::once(v1)
                        .chain(ball.s_neighbors(v1).iter().copied())
                        .find(|&c| cycle.iter().all(|&x| adjacent_or_equal(ball, c, x)));
                    if central.is_some() {
                        report.record(margin_rec);
                    } else {
                        report.violation(margin_rec, witness(ball, "four_cycle", &cycle));
                    }
                }
            }
        }
    })
}

/// Audits that every embedded 6-cycle with s-types `1,n,1,n,1,n` whose six
/// vertices are margin-guarded has a filler vertex s-adjacent to all three
/// s-type-1 corners.
pub fn check_6cycles(ball: &DeligneBall, margin: i64) -> CheckReport {
    let n = ball.n();
    let ones: Vec<u32> = guarded_vertices(ball, margin)
        .into_iter()
        .filter(|&v| ball.s_type(v) == 1)
        .collect();
    par_scan("six_cycles", &ones, |v1, report| {
        let top_guarded = |w: u32| ball.s_type(w) == n && ball.margin(w) >= margin;
        let w_around_v1: Vec<u32> = ball
            .s_neighbors(v1)
            .iter()
            .copied()
            .filter(|&w| top_guarded(w))
            .collect();
        let mut second: Vec<u32> = w_around_v1
            .iter()
            .flat_map(|&w| ball.s_neighbors(w).iter().copied())
            .filter(|&v| v > v1 && ball.s_type(v) == 1 && ball.margin(v) >= margin)
            .collect();
        second.sort_unstable();
        second.dedup();
        for (i, &v2) in second.iter().enumerate() {
            for &v3 in second.iter().skip(i + 1) {
                let w12: Vec<u32> = w_around_v1
                    .iter()
                    .copied()
                    .filter(|&w| ball.s_adjacent(w, v2))
                    .collect();
                let w31: Vec<u32> = w_around_v1
                    .iter()
                    .copied()
                    .filter(|&w| ball.s_adjacent(w, v3))
                    .collect();
                let w23: Vec<u32> = ball
                    .s_neighbors(v2)
                    .iter()
                    .copied()
                    .filter(|&w| top_guarded(w) && ball.s_adjacent(w, v3))
                    .collect();
                if w12.is_empty() || w23.is_empty() || w31.is_empty() {
                    continue;
                }
                let filler = ball
                    .s_neighbors(v1)
                    .iter()
                    .copied()
                    .find(|&c| ball.s_adjacent(c, v2) && ball.s_adjacent(c, v3));
                for &wa in &w12 {
                    for &wb in &w23 {
                        if wb == wa {
                            continue;
                        }
                        for &wc in &w31 {
                            if wc == wa || wc == wb {
                                continue;
                            }
                            let cycle = [v1, wa, v2, wb, v3, wc];
                            let margin_rec = min_margin(ball, &cycle);
                            if filler.is_some() {
                                report.record(margin_rec);
                            } else {
                                report.violation(margin_rec, witness(ball, "six_cycle", &cycle));
                            }
                        }
                    }
                }
            }
        }
    })
}

fn sorted_intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn common_of_three(a: &[u32], b: &[u32], c: &[u32]) -> Option<u32> {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() && k < c.len() {
        let m = a[i].max(b[j]).max(c[k]);
        if a[i] == m && b[j] == m && c[k] == m {
            return Some(m);
        }
        if a[i] < m {
            i += 1;
        }
        if b[j] < m {
            j += 1;
        }
        if c[k] < m {
            k += 1;
        }
    }
    None
}

/// Audits the bowtie-free and upward-flag properties of the subdivided
/// order on margin-guarded vertices.  A bowtie is a pair of incomparable
/// guarded elements below a pair of incomparable guarded elements with no
/// middle element between them; the upward-flag condition asks every
/// pairwise upper-bounded guarded triple for a common upper bound.  Middle
/// elements and bounds are searched among all vertices.
pub fn check_bowtie_upflag_ball(ball: &DeligneBall, margin: i64) -> CheckReport {
    let name = "bowtie_upflag";
    let guarded = guarded_vertices(ball, margin);
    // Sorted upward closures {x} ∪ {strictly larger neighbors} for bound
    // witness searches.
    let ups: Vec<Vec<u32>> = (0..ball.len() as u32)
        .map(|x| {
            let mut up: Vec<u32> = ball
                .s_neighbors(x)
                .iter()
                .copied()
                .filter(|&c| ball.s_type(c) > ball.s_type(x))
                .collect();
            let at = up.partition_point(|&c| c < x);
            up.insert(at, x);
            up
        })
        .collect();
    let comparable = |a: u32, b: u32| ball.s_lt(a, b) || ball.s_lt(b, a);

    let bowtie = par_scan(name, &guarded, |y1, report| {
        let lower1: Vec<u32> = ball
            .s_neighbors(y1)
            .iter()
            .copied()
            .filter(|&x| ball.s_type(x) < ball.s_type(y1) && ball.margin(x) >= margin)
            .collect();
        for &y2 in &guarded {
            if y2 <= y1 || comparable(y1, y2) {
                continue;
            }
            let lower: Vec<u32> = lower1
                .iter()
                .copied()
                .filter(|&x| ball.s_lt(x, y2))
                .collect();
            for (i, &x1) in lower.iter().enumerate() {
                for &x2 in lower.iter().skip(i + 1) {
                    if comparable(x1, x2) {
                        continue;
                    }
                    let margin_rec = min_margin(ball, &[x1, x2, y1, y2]);
                    let middle = ups[x1 as usize]
                        .iter()
                        .copied()
                        .filter(|&z| ball.s_le(x2, z))
                        .find(|&z| ball.s_le(z, y1) && ball.s_le(z, y2));
                    if middle.is_some() {
                        report.record(margin_rec);
                    } else {
                        report.violation(margin_rec, witness(ball, "bowtie", &[x1, x2, y1, y2]));
                    }
                }
            }
        }
    });

    let upflag = par_scan(name, &guarded, |x1, report| {
        let partners: Vec<u32> = guarded
            .iter()
            .copied()
            .filter(|&x2| x2 > x1 && sorted_intersects(&ups[x1 as usize], &ups[x2 as usize]))
            .collect();
        for (i, &x2) in partners.iter().enumerate() {
            for &x3 in partners.iter().skip(i + 1) {
                if !sorted_intersects(&ups[x2 as usize], &ups[x3 as usize]) {
                    continue;
                }
                let margin_rec = min_margin(ball, &[x1, x2, x3]);
                let bound =
                    common_of_three(&ups[x1 as usize], &ups[x2 as usize], &ups[x3 as usize]);
                if bound.is_some() {
                    report.record(margin_rec);
                } else {
                    report.violation(margin_rec, witness(ball, "upflag", &[x1, x2, x3]));
                }
            }
        }
    });

    let mut total = bowtie;
    total.merge(upflag);
    total
}

/// Builds the coset-complex ball for `A(n)` and runs all six audits.  The
/// 6-cycle scan uses `margin + 1` because its configurations reach one
/// coset step further.
pub fn run_ball_suite(n: usize, radius: i64, margin: i64) -> Result<RunReport, ArtinError> {
    let ball = deligne_ball(n, radius)?;
    let mut run = RunReport::new("artin");
    run.set_parameter("diagram", Diagram::A(n));
    run.set_parameter("radius", radius);
    run.set_parameter("margin", margin);
    run.set_parameter("elements", ball.ball().len());
    run.set_parameter("real_vertices", ball.real_count());
    run.set_parameter("fake_vertices", ball.len() - ball.real_count());
    run.push(check_mixed_real_edges(&ball));
    run.push(check_chain_of_fake(&ball, margin));
    run.push(check_partial_order_ball(&ball, margin));
    run.push(check_4cycles(&ball, margin));
    run.push(check_6cycles(&ball, margin + 1));
    run.push(check_bowtie_upflag_ball(&ball, margin));
    Ok(run)
}
