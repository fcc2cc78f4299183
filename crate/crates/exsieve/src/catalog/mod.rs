//! The immutable data layer: family records, the Table-5 parabolic rows,
//! Table-6 numeric rows, Table-7 subfield rows, Table-3 non-parabolic case
//! rows, subdegree data, per-case bound rows, and the known designs of
//! Table 2. Built once, validated, then shared read-only.

pub mod bounds;
pub mod families;
pub mod subdegrees;

use crate::arith::PrimePower;
use crate::cyclo::{phi_product, Sign};
use families::Family;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

/// Subgroup class in the sense of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupClass {
    #[serde(rename = "parabolic")]
    Parabolic,
    #[serde(rename = "large-nonparabolic")]
    LargeNonParabolic,
    #[serde(rename = "numeric")]
    Numeric,
    #[serde(rename = "subfield")]
    Subfield,
}

/// Source citation: table number (0 = in-text) and line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub table: u32,
    pub line: u32,
}

/// One parabolic row: v as a cyclotomic product, |v-1|_p = q^t, and whether
/// the action has a unique p-power subdegree usable for the reduction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParabolicRow {
    pub line: u32,
    pub family: Family,
    pub twist: Option<Sign>,
    pub label: String,
    /// v = prod Phi_n(q)^mult (negative mult divides).
    pub v_phi: Vec<(u64, i32)>,
    /// |v-1|_p = q^t.
    pub t: u32,
    /// r(q) = q+1 rows need the extended m-loop; r = 1 rows force m = q-1.
    pub r_is_q_plus_1: bool,
    pub unique_p_power_subdegree: bool,
    pub source: Source,
}

impl ParabolicRow {
    pub fn v(&self, q: &PrimePower) -> BigUint {
        phi_product(&self.v_phi, &q.q)
    }
}

/// One numeric row (Table 6 plus documented extras): exact integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericRow {
    pub family: Family,
    pub twist: Option<Sign>,
    pub q: u64,
    pub label: String,
    /// |X cap H|, the order the paper's v column corresponds to.
    pub h_order: BigUint,
    pub v: BigUint,
    /// the "k divides" column, stored as printed.
    pub k_bound: BigUint,
    pub source: Source,
    /// true for rows absent from the paper's table (coverage gaps).
    pub extra: bool,
}

/// One subfield row of Table 7.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubfieldRow {
    pub line: u32,
    pub family: Family,
    /// twist of the parent (E6 lines) and of the subfield group.
    pub parent_twist: Option<Sign>,
    pub sub_twist: Option<Sign>,
    /// prime index r with q = q0^r.
    pub r: u32,
    /// case (i): the coarse inequality excludes every q0.
    /// case (ii): finite q0 set from the stored bound row.
    pub case_two: bool,
    pub source: Source,
}

/// A Table-3 row (large maximal non-parabolic), keyed by the scan case that
/// mechanizes it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonParabolicRow {
    pub family: Family,
    pub label: String,
    pub case_id: String,
    pub conditions: String,
    pub source: Source,
}

/// Known flag-transitive designs (Table 2), with the G2(2) special entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnownDesign {
    pub group: String,
    pub socle: String,
    pub stabiliser: String,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub source: Source,
}

/// The full catalog.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub parabolic: Vec<ParabolicRow>,
    pub numeric: Vec<NumericRow>,
    pub subfield: Vec<SubfieldRow>,
    pub nonparabolic: Vec<NonParabolicRow>,
    pub known_designs: Vec<KnownDesign>,
}

fn ph(line: u32, family: Family, twist: Option<Sign>, label: &str, v_phi: &[(u64, i32)], t: u32, r1: bool, upp: bool) -> ParabolicRow {
    ParabolicRow {
        line,
        family,
        twist,
        label: label.to_string(),
        v_phi: v_phi.to_vec(),
        t,
        r_is_q_plus_1: r1,
        unique_p_power_subdegree: upp,
        source: Source { table: 5, line },
    }
}

/// Table 5, all 33 lines. Lines 7, 17, 20, 21 carry corrected cyclotomic
/// products (the printed ones fail the |X| divisibility check); every row is
/// re-verified against the order quotient and the |v-1|_p column at load.
pub fn parabolic_rows() -> Vec<ParabolicRow> {
    use Family::*;
    use Sign::{Minus as M, Plus as P};
    vec![
        ph(1, TwoB2, None, "[q^2]:C_{q-1}", &[(4, 1)], 2, false, true),
        ph(2, TwoG2, None, "[q^3]:C_{q-1}", &[(2, 1), (6, 1)], 3, false, true),
        ph(3, ThreeD4, None, "q^{1+8}:SL2(q^3).C_{q-1}", &[(2, 1), (3, 1), (6, 1), (12, 1)], 1, false, true),
        ph(4, ThreeD4, None, "q^{2+3+6}:SL2(q).C_{q^3-1}", &[(2, 1), (3, 1), (6, 2), (12, 1)], 3, true, true),
        ph(5, TwoF4, None, "[q^10]:2B2(q).C_{q-1}", &[(2, 2), (4, 1), (6, 1), (12, 1)], 1, false, true),
        ph(6, TwoF4, None, "[q^11]:GL2(q)", &[(2, 1), (4, 2), (6, 1), (12, 1)], 2, true, true),
        ph(7, G2, None, "[q^5]:GL2(q)", &[(2, 1), (3, 1), (6, 1)], 1, false, true),
        ph(8, F4, None, "C3(q) parabolic", &[(2, 1), (3, 1), (4, 1), (6, 1), (8, 1), (12, 1)], 1, false, true),
        ph(9, F4, None, "B3(q) parabolic", &[(2, 1), (3, 1), (4, 1), (6, 1), (8, 1), (12, 1)], 1, false, true),
        ph(10, F4, None, "A1A2 parabolic", &[(2, 2), (3, 1), (4, 2), (6, 2), (8, 1), (12, 1)], 1, false, true),
        ph(11, E6, Some(M), "A5^- parabolic", &[(2, 1), (3, 1), (4, 1), (6, 1), (8, 1), (12, 1), (18, 1)], 1, false, true),
        ph(12, E6, Some(M), "D4^- parabolic", &[(2, 3), (3, 1), (4, 1), (6, 2), (10, 1), (12, 1), (18, 1)], 1, false, true),
        ph(13, E6, Some(M), "A1A2(q^2) parabolic", &[(2, 3), (3, 1), (4, 1), (6, 2), (8, 1), (10, 1), (12, 1), (18, 1)], 1, false, true),
        ph(14, E6, Some(M), "A1(q^2)A2 parabolic", &[(2, 4), (3, 1), (4, 1), (6, 3), (8, 1), (10, 1), (12, 1), (18, 1)], 1, false, true),
        ph(15, E6, Some(P), "D5 parabolic", &[(3, 2), (6, 1), (9, 1), (12, 1)], 1, false, false),
        ph(16, E6, Some(P), "A1A4 parabolic", &[(2, 1), (3, 2), (4, 1), (6, 2), (8, 1), (9, 1), (12, 1)], 1, false, false),
        ph(17, E6, Some(P), "A1A2A2 parabolic", &[(2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (8, 1), (9, 1), (12, 1)], 1, false, true),
        ph(18, E6, Some(P), "A5 parabolic", &[(2, 1), (3, 1), (4, 1), (6, 1), (8, 1), (9, 1), (12, 1)], 1, false, true),
        ph(19, E7, None, "D6 parabolic", &[(2, 1), (3, 1), (6, 1), (7, 1), (9, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(20, E7, None, "A1A5 parabolic", &[(2, 3), (3, 1), (4, 1), (6, 2), (7, 1), (8, 1), (9, 1), (10, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(21, E7, None, "A6 parabolic", &[(2, 4), (3, 1), (4, 1), (6, 2), (8, 1), (9, 1), (10, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(22, E7, None, "A1A2A3 parabolic", &[(2, 3), (3, 1), (4, 1), (5, 1), (6, 3), (7, 1), (8, 1), (9, 1), (10, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(23, E7, None, "A2A4 parabolic", &[(2, 4), (3, 1), (4, 1), (6, 3), (7, 1), (8, 1), (9, 1), (10, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(24, E7, None, "A1D5 parabolic", &[(2, 2), (3, 2), (6, 2), (7, 1), (9, 1), (10, 1), (12, 1), (14, 1), (18, 1)], 1, false, true),
        ph(25, E7, None, "E6 parabolic", &[(2, 3), (6, 1), (7, 1), (10, 1), (14, 1), (18, 1)], 1, false, true),
        ph(26, E8, None, "D7 parabolic", &[(2, 2), (3, 2), (4, 1), (5, 1), (6, 2), (8, 1), (9, 1), (10, 1), (12, 1), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(27, E8, None, "A7 parabolic", &[(2, 4), (3, 2), (4, 2), (5, 1), (6, 3), (8, 1), (9, 1), (10, 2), (12, 2), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(28, E8, None, "A1A6 parabolic", &[(2, 4), (3, 2), (4, 3), (5, 1), (6, 3), (8, 2), (9, 1), (10, 2), (12, 2), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(29, E8, None, "A1A2A4 parabolic", &[(2, 4), (3, 2), (4, 3), (5, 1), (6, 4), (7, 1), (8, 2), (9, 1), (10, 2), (12, 2), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(30, E8, None, "A3A4 parabolic", &[(2, 4), (3, 2), (4, 2), (5, 1), (6, 4), (7, 1), (8, 2), (9, 1), (10, 2), (12, 2), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(31, E8, None, "A2D5 parabolic", &[(2, 3), (3, 2), (4, 2), (5, 1), (6, 3), (7, 1), (8, 1), (9, 1), (10, 2), (12, 2), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(32, E8, None, "A1E6 parabolic", &[(2, 3), (3, 1), (4, 2), (5, 1), (6, 2), (7, 1), (8, 1), (10, 2), (12, 1), (14, 1), (15, 1), (18, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
        ph(33, E8, None, "E7 parabolic", &[(2, 1), (3, 1), (4, 2), (5, 1), (6, 1), (8, 1), (10, 1), (12, 1), (15, 1), (20, 1), (24, 1), (30, 1)], 1, false, true),
    ]
}

fn bu(s: &str) -> BigUint {
    s.parse().unwrap()
}

fn nr(family: Family, twist: Option<Sign>, q: u64, label: &str, h: BigUint, v: &str, kb: &str, line: u32) -> NumericRow {
    NumericRow {
        family,
        twist,
        q,
        label: label.to_string(),
        h_order: h,
        v: bu(v),
        k_bound: bu(kb),
        source: Source { table: 6, line },
        extra: false,
    }
}

/// Table 6 rows. |X cap H| is the order the printed v corresponds to (i.e.
/// |X|/v); the G2(3) row's printed v does not divide |G2(3)| and is stored
/// corrected (v = 3159, bound |Out|*|XcapH| = 2688). One extra row covers the
/// F4(3)/3D4(2).3 cell of Theorem 4.1 that the paper's case analysis skips.
pub fn numeric_rows() -> Vec<NumericRow> {
    use Family::*;
    use Sign::Minus as M;
    let mut rows = vec![
        nr(TwoB2, None, 8, "13:4", bu("52"), "560", "156", 1),
        nr(TwoB2, None, 32, "41:4", bu("164"), "198400", "820", 2),
        nr(ThreeD4, None, 2, "7^2:SL2(3)", bu("1176"), "179712", "3528", 3),
        nr(TwoF4, None, 8, "SU3(8):2", bu("33094656"), "8004475184742400", "99283968", 4),
        nr(TwoF4, None, 8, "PGU3(8):2", bu("33094656"), "8004475184742400", "99283968", 5),
        nr(G2, None, 3, "2^3.L3(2)", bu("1344"), "3159", "2688", 6),
        nr(G2, None, 4, "L2(13)", bu("1092"), "230400", "2184", 7),
        nr(G2, None, 4, "J2", bu("604800"), "416", "1209600", 8),
        nr(G2, None, 5, "G2(2)", bu("12096"), "484375", "12096", 9),
        nr(G2, None, 5, "2^3.L3(2)", bu("1344"), "4359375", "1344", 10),
        nr(G2, None, 7, "G2(2)", bu("12096"), "54925276", "12096", 11),
        nr(G2, None, 11, "J1", bu("175560"), "2145199320", "175560", 12),
        nr(F4, None, 2, "3D4(2)", bu("211341312"), "15667200", "422682624", 13),
        nr(F4, None, 2, "D4(2).S3", bu("1045094400"), "3168256", "1045094400", 14),
        nr(F4, None, 2, "Alt9", bu("181440"), "18249154560", "362880", 15),
        nr(F4, None, 2, "Alt10", bu("1814400"), "1824915456", "3628800", 16),
        nr(F4, None, 2, "PSL4(3).2", bu("12130560"), "272957440", "24261120", 17),
        nr(F4, None, 2, "J2:2", bu("1209600"), "2737373184", "1209600", 18),
        nr(F4, None, 2, "S6wrS2", bu("1036800"), "3193602048", "2073600", 19),
        nr(E7, None, 2, "Fi22", bu("64561751654400"), "123873281581429293827751936", "64561751654400", 20),
        nr(E7, None, 2, "4.PSL8(2)", bu("21392255076846796800"), "373849134340755161088", "21392255076846796800", 21),
        nr(E7, None, 2, "4.PSU8(2)", bu("29739884203317657600"), "268914162119825424384", "29739884203317657600", 22),
        nr(E7, None, 2, "(2+1)E6^-(2)-norm", bu("3214364146718543865446400"), "2488042946297856", "3214364146718543865446400", 23),
        nr(E6, Some(M), 2, "J3", bu("301397760"), "253925177425920", "301397760", 24),
        nr(E6, Some(M), 2, "Alt12", bu("239500800"), "319549996007424", "1437004800", 25),
        nr(E6, Some(M), 2, "Omega7(3)", bu("4585351680"), "16690645565440", "55024220160", 26),
        nr(E6, Some(M), 2, "Fi22", bu("64561751654400"), "1185415168", "387370509926400", 27),
        nr(E6, Some(M), 2, "D5^-(2)-norm", bu("75046138675200"), "1019805696", "75046138675200", 28),
    ];
    rows.push(NumericRow {
        family: F4,
        twist: None,
        q: 3,
        label: "3D4(2).3".into(),
        h_order: bu("634023936"),
        v: bu("9044486283900600"),
        k_bound: bu("634023936"),
        source: Source { table: 3, line: 0 },
        extra: true,
    });
    rows
}

/// Table 7, all 16 lines.
pub fn subfield_rows() -> Vec<SubfieldRow> {
    use Family::*;
    use Sign::{Minus as M, Plus as P};
    let mk = |line, family, pt, st, r, case_two| SubfieldRow {
        line,
        family,
        parent_twist: pt,
        sub_twist: st,
        r,
        case_two,
        source: Source { table: 7, line },
    };
    vec![
        mk(1, TwoB2, None, None, 3, false),
        mk(2, TwoG2, None, None, 3, false),
        mk(3, ThreeD4, None, None, 2, true),
        mk(4, TwoF4, None, None, 3, false),
        mk(5, G2, None, None, 2, true),
        mk(6, G2, None, None, 3, false),
        mk(7, F4, None, None, 2, true),
        mk(8, F4, None, None, 3, false),
        mk(9, E6, Some(M), Some(M), 3, false),
        mk(10, E6, Some(P), Some(P), 2, true),
        mk(11, E6, Some(P), Some(M), 2, true),
        mk(12, E6, Some(P), Some(P), 3, false),
        mk(13, E7, None, None, 2, true),
        mk(14, E7, None, None, 3, false),
        mk(15, E8, None, None, 2, true),
        mk(16, E8, None, None, 3, false),
    ]
}

/// Table 3 rows, keyed by the scan case mechanizing each.
pub fn nonparabolic_rows() -> Vec<NonParabolicRow> {
    use Family::*;
    let mk = |family, label: &str, case_id: &str, conditions: &str, line| NonParabolicRow {
        family,
        label: label.into(),
        case_id: case_id.into(),
        conditions: conditions.into(),
        source: Source { table: 3, line },
    };
    vec![
        mk(TwoB2, "(q+sqrt(2q)+1):4", "numeric", "q=8,32", 1),
        mk(TwoB2, "2B2(q^{1/3})", "subfield:1", "q>8", 2),
        mk(TwoG2, "A1(q) = 2xPSL2(q)", "2g2-a1", "", 3),
        mk(TwoG2, "2G2(q^{1/3})", "subfield:2", "", 4),
        mk(ThreeD4, "A1(q^3)A1(q)", "3d4-a1a1", "", 5),
        mk(ThreeD4, "(q^2+eq+1)A2^e(q)", "3d4-sl3", "e=+-", 5),
        mk(ThreeD4, "G2(q)", "3d4-g2", "", 5),
        mk(ThreeD4, "3D4(q^{1/2})", "subfield:3", "", 5),
        mk(ThreeD4, "7^2:SL2(3)", "numeric", "q=2", 6),
        mk(TwoF4, "2B2(q) wr 2", "2f4-2b2", "", 7),
        mk(TwoF4, "B2(q) = O5(q):2", "2f4-b2", "", 7),
        mk(TwoF4, "2F4(q^{1/3})", "subfield:4", "", 7),
        mk(TwoF4, "SU3(q):2, PGU3(q):2", "numeric", "q=8", 8),
        mk(G2, "A2^e(q) = SL3^e(q):2", "g2-sl3-family", "e=+-", 9),
        mk(G2, "A1(q)^2", "g2-a1a1", "", 9),
        mk(G2, "G2(q^{1/r})", "subfield:5,6", "r=2,3", 9),
        mk(G2, "2G2(q)", "g2-2g2", "q=3^a, a odd", 10),
        mk(G2, "G2(2)", "numeric", "q=5,7", 11),
        mk(G2, "L2(13), J2", "numeric", "q=4", 12),
        mk(G2, "J1", "numeric", "q=11", 13),
        mk(G2, "2^3.L3(2)", "numeric", "q=3,5", 14),
        mk(F4, "B4(q) = Omega9(q)", "f4-b4c4", "", 15),
        mk(F4, "D4(q).S3", "f4-d4", "q>2 (q=2 numeric)", 15),
        mk(F4, "3D4(q).3", "f4-3d4", "q>2 (q=2 numeric)", 15),
        mk(F4, "F4(q^{1/r})", "subfield:7,8", "r=2,3", 16),
        mk(F4, "A1(q)C3(q)", "f4-a1c3", "p odd", 17),
        mk(F4, "C4(q) = Sp8(q)", "f4-b4c4", "p=2", 18),
        mk(F4, "C2(q^2) = Sp4(q^2).2", "f4-sp4q2", "p=2", 18),
        mk(F4, "C2(q)^2 = Sp4(q)^2.2", "f4-sp4sq", "p=2", 18),
        mk(F4, "2F4(q)", "f4-2f4", "q=2^{2n+1}>=2", 19),
        mk(F4, "3D4(2)", "numeric", "q=3", 20),
        mk(F4, "Alt9, Alt10, A3(3), J2, S6wrS2", "numeric", "q=2", 21),
        mk(F4, "A1(q)G2(q)", "f4-a1g2", "q>3 odd, G!=X", 22),
        mk(E6, "A1(q)A5^e(q)", "e6-a1a5", "e=+-", 23),
        mk(E6, "F4(q)", "e6-f4", "", 23),
        mk(E6, "(q-e)D5^e(q)", "e6-d5", "e=- ((2,-) numeric)", 24),
        mk(E6, "C4(q)", "e6-c4", "p odd", 25),
        mk(E6, "E6^e'(q^{1/r})", "subfield:9-12", "(e,e',r) coupled", 26),
        mk(E6, "(q-e)^2.D4(q)", "e6-d4", "(e,q)!=(+,2)", 27),
        mk(E6, "(q^2+eq+1).3D4(q)", "e6-3d4", "(e,q)!=(-,2)", 28),
        mk(E6, "J3, Alt12, B3(3), Fi22", "numeric", "(e,q)=(-,2)", 29),
        mk(E7, "(q-e)E6^e(q)", "e7-e6", "(2,-) numeric", 30),
        mk(E7, "A1(q)D6(q)", "e7-a1d6", "", 30),
        mk(E7, "A7^e(q)", "e7-a7", "q>2 (q=2 numeric)", 30),
        mk(E7, "A1(q)F4(q)", "e7-a1f4", "q>3, G!=X", 30),
        mk(E7, "E7(q^{1/r})", "subfield:13,14", "r=2,3", 30),
        mk(E7, "Fi22", "numeric", "q=2", 31),
        mk(E8, "A1(q)E7(q)", "e8-a1e7", "", 32),
        mk(E8, "D8(q)", "e8-d8", "", 32),
        mk(E8, "A2^e(q)E6^e(q)", "e8-a2e6", "e=+-", 32),
        mk(E8, "E8(q^{1/r})", "subfield:15,16", "r=2,3", 32),
    ]
}

/// Table 2 (the known designs), with the complement convention of
/// Remark 1.2(d): line 1's (36,15,6) is antiflag-transitive, the
/// flag-transitive design is its complement (36,21,12).
pub fn known_designs() -> Vec<KnownDesign> {
    let mk = |group: &str, socle: &str, stab: &str, v, k, lambda, line| KnownDesign {
        group: group.into(),
        socle: socle.into(),
        stabiliser: stab.into(),
        v,
        k,
        lambda,
        source: Source { table: 2, line },
    };
    vec![
        mk("G2(2)", "G2(2)' = PSU3(3)", "SL3(2)", 36, 21, 12, 1),
        mk("G2(2)", "G2(2)' = PSU3(3)", "4:S4 (parabolic)", 63, 32, 16, 2),
        mk("G2(3)", "G2(3)", "SL3^-(3):2", 351, 126, 45, 3),
        mk("G2(3)", "G2(3)", "SL3(3):2", 378, 117, 36, 4),
    ]
}

impl Catalog {
    pub fn validate(&self) -> Result<(), String> {
        // parabolic: v | |X| and |v-1|_p = q^t at sample q per family
        for row in &self.parabolic {
            for q in sample_q(row.family) {
                let v = row.v(&q);
                let x = row.family.order(&q, row.twist);
                if !(&x % &v).is_zero() {
                    return Err(format!("parabolic line {}: v does not divide |X| at q={}", row.line, q.q));
                }
                let pp = crate::arith::p_part(&(&v - BigUint::one()), &q.p);
                if pp != q.q.pow(row.t) {
                    return Err(format!("parabolic line {}: |v-1|_p != q^{} at q={}", row.line, row.t, q.q));
                }
            }
        }
        // numeric: h | |X| and v = |X|/h; k_bound vs out*h relation recorded
        for row in &self.numeric {
            let q = prime_power_of(row.q);
            let x = row.family.order(&q, row.twist);
            if !(&x % &row.h_order).is_zero() {
                return Err(format!("numeric {}/{}: |XcapH| does not divide |X|", row.family.name(), row.label));
            }
            if &x / &row.h_order != row.v {
                return Err(format!("numeric {}/{}: stored v mismatch", row.family.name(), row.label));
            }
            // Tits consistency: p | v for these non-parabolic cells
            if !(&row.v % &q.p).is_zero() {
                return Err(format!("numeric {}/{}: p does not divide v", row.family.name(), row.label));
            }
        }
        Ok(())
    }

    /// Canonical JSON document (sorted keys, no insignificant whitespace).
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("catalog serializes");
        canonical_json(&value)
    }

    pub fn from_json(s: &str) -> Result<Catalog, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Render a serde_json value canonically: object keys sorted, no whitespace.
pub fn canonical_json(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let inner: Vec<String> = keys
                .into_iter()
                .map(|k| format!("{}:{}", serde_json::to_string(k).unwrap(), canonical_json(&map[k])))
                .collect();
            format!("{{{}}}", inner.join(","))
        }
        serde_json::Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(canonical_json).collect();
            format!("[{}]", inner.join(","))
        }
        other => serde_json::to_string(other).unwrap(),
    }
}

fn prime_power_of(q: u64) -> PrimePower {
    let f = crate::arith::is_prime_power(&BigUint::from(q)).expect("catalog q is a prime power");
    PrimePower::new(
        u64::try_from(&f.p).expect("catalog primes fit u64"),
        f.a,
    )
}

/// Representative q values per family used by load-time checks.
fn sample_q(family: Family) -> Vec<PrimePower> {
    match family {
        Family::TwoB2 | Family::TwoF4 => vec![PrimePower::new(2, 3), PrimePower::new(2, 5)],
        Family::TwoG2 => vec![PrimePower::new(3, 3), PrimePower::new(3, 5)],
        Family::G2 => vec![PrimePower::new(3, 1), PrimePower::new(2, 2), PrimePower::new(5, 1), PrimePower::new(7, 1)],
        Family::ThreeD4 | Family::F4 => vec![PrimePower::new(2, 1), PrimePower::new(3, 1), PrimePower::new(2, 2), PrimePower::new(5, 1)],
        Family::E6 | Family::E7 | Family::E8 => vec![PrimePower::new(2, 1), PrimePower::new(3, 1), PrimePower::new(2, 2)],
    }
}

/// The embedded catalog, or the file named by EXSIEVE_CATALOG when set.
pub fn catalog() -> &'static Catalog {
    static CATALOG: Lazy<Catalog> = Lazy::new(|| {
        let cat = match std::env::var("EXSIEVE_CATALOG") {
            Ok(path) if !path.is_empty() => {
                let text = std::fs::read_to_string(&path)
                    .unwrap_or_else(|e| panic!("EXSIEVE_CATALOG={path}: {e}"));
                Catalog::from_json(&text).unwrap_or_else(|e| panic!("EXSIEVE_CATALOG={path}: {e}"))
            }
            _ => builtin_catalog(),
        };
        cat.validate().expect("catalog integrity");
        cat
    });
    &CATALOG
}

/// Whether the active catalog came from the EXSIEVE_CATALOG override.
pub fn catalog_overridden() -> bool {
    std::env::var("EXSIEVE_CATALOG").map(|v| !v.is_empty()).unwrap_or(false)
}

pub fn builtin_catalog() -> Catalog {
    Catalog {
        parabolic: parabolic_rows(),
        numeric: numeric_rows(),
        subfield: subfield_rows(),
        nonparabolic: nonparabolic_rows(),
        known_designs: known_designs(),
    }
}

/// The special G2(2) entries of Remark 1.2(d): socle G2(2)' = PSU3(3) of
/// order 6048, full group G2(2) of order 12096. Returns (socle order,
/// SL3(2) order, parabolic 4:S4 order).
pub fn g2_2_special() -> (BigUint, BigUint, BigUint) {
    (BigUint::from(6048u32), BigUint::from(168u32), BigUint::from(96u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_validates() {
        builtin_catalog().validate().unwrap();
    }

    #[test]
    fn numeric_row_counts() {
        let rows = numeric_rows();
        let paper: Vec<_> = rows.iter().filter(|r| !r.extra).collect();
        assert!(paper.len() >= 26, "paper table rows");
        assert_eq!(rows.len(), 29);
        // one 3D4 numeric row
        let d4: Vec<_> = rows
            .iter()
            .filter(|r| r.family == Family::ThreeD4)
            .collect();
        assert_eq!(d4.len(), 1);
        assert_eq!(d4[0].label, "7^2:SL2(3)");
        assert_eq!(d4[0].v, BigUint::from(179712u32));
    }

    #[test]
    fn parabolic_has_33_lines() {
        assert_eq!(parabolic_rows().len(), 33);
    }

    #[test]
    fn v_points_examples() {
        // (G2(3), SL3^-(3):2) -> 351; (G2(4), J2) -> 416; (3D4(2), 7^2:SL2(3)) -> 179712
        let g2 = Family::G2.order(&PrimePower::new(3, 1), None);
        assert_eq!(&g2 / &BigUint::from(12096u32), BigUint::from(351u32));
        let g24 = Family::G2.order(&PrimePower::new(2, 2), None);
        assert_eq!(&g24 / &BigUint::from(604800u32), BigUint::from(416u32));
        let d4 = Family::ThreeD4.order(&PrimePower::new(2, 1), None);
        assert_eq!(&d4 / &BigUint::from(1176u32), BigUint::from(179712u32));
    }

    #[test]
    fn catalog_roundtrip() {
        let c = builtin_catalog();
        let json = c.to_canonical_json();
        let c2 = Catalog::from_json(&json).unwrap();
        assert_eq!(json, c2.to_canonical_json());
        // canonical form: no spaces outside strings, sorted keys
        assert!(!json.contains(": "));
    }

    #[test]
    fn is_large_examples() {
        // Lemma 4.2: |X| < b^2 |XcapH|^3
        let x = Family::G2.order(&PrimePower::new(3, 1), None);
        let h = BigUint::from(12096u32);
        assert!(x < BigUint::from(4u32) * (&h).pow(3));
        let x = Family::TwoG2.order(&PrimePower::new(3, 3), None);
        let h = BigUint::from(19656u32);
        assert!(x < BigUint::from(9u32) * (&h).pow(3));
        // trivial subgroup is never large
        let one = BigUint::one();
        assert!(!(x < BigUint::one() * (&one).pow(3)));
    }
}
