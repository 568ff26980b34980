use super::expr::Expr;
use super::text::parse_expr;
use std::fmt;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Theta derivatives with characteristics in ¼ℤ (and ½ℤ).
    Quarter,
    /// Theta derivatives with characteristics in ⅓ℤ.
    Third,
    /// The integral characteristic [1;1].
    Classical,
    /// Identities between theta constants, eta quotients and explicit sums.
    ConstantLevel,
    /// Weight-one divisor-sum series and their twists.
    SeriesLevel,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Quarter, Family::Third, Family::Classical, Family::ConstantLevel, Family::SeriesLevel];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Quarter => "quarter",
            Family::Third => "third",
            Family::Classical => "classical",
            Family::ConstantLevel => "constant-level",
            Family::SeriesLevel => "series-level",
        }
    }

    pub fn from_tag(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: String,
    pub family: Family,
    pub lhs: Expr,
    pub rhs: Expr,
    /// What the identity states.
    pub anchor: String,
    /// Set when the stored form differs from the usual statement of the identity.
    pub note: Option<String>,
}

impl IdentityRecord {
    /// True when the left side is a single reduced theta derivative.
    pub fn is_derivative(&self) -> bool {
        matches!(self.lhs, Expr::ThetaDerivReduced(..))
    }
}

type Row = (&'static str, Family, &'static str, &'static str, &'static str, Option<&'static str>);

use Family::*;

// Shorthand used in the rows below: th(s) = theta[0,0](s*tau), tt(s) = theta[1,0](s*tau),
// hat(s) = theta[0,1](s*tau), T3(s) = Theta3(s*tau).
const ROWS: &[Row] = &[
    // [1;1]
    ("clasder", Classical, "dtheta[1,1](tau)", "-theta[0,0](tau)*theta[0,1](tau)*theta[1,0](tau)",
        "Dθ[1;1] is minus the product of the three even theta constants", None),
    ("clasder-eta", Classical, "dtheta[1,1](tau)", "-2*eta(tau)^3",
        "Dθ[1;1] = −2η³", None),
    // ε = 1, δ ∈ {1/2, 1/4, 3/4}
    ("M-thm1", Quarter, "dtheta[1,1/2](tau)", "-theta[1,1/2](tau)*theta[0,0](2*tau)^2",
        "Dθ[1;1/2] = −θ[1;1/2]·th(2)²", None),
    ("M-thm2-minus", Quarter, "dtheta[1,1/4](tau)",
        "-theta[1,1/4](tau)*theta[0,0](4*tau)*(sqrt(2)*theta[0,0](2*tau) - theta[0,0](4*tau))",
        "Dθ[1;1/4] = −θ[1;1/4]·th(4)·(√2·th(2) − th(4))",
        Some("δ = 1/4 pairs with the minus sign")),
    ("M-thm2-plus", Quarter, "dtheta[1,3/4](tau)",
        "-theta[1,3/4](tau)*theta[0,0](4*tau)*(sqrt(2)*theta[0,0](2*tau) + theta[0,0](4*tau))",
        "Dθ[1;3/4] = −θ[1;3/4]·th(4)·(√2·th(2) + th(4))",
        Some("δ = 3/4 pairs with the plus sign")),
    // characteristics in ½ℤ
    ("eq-01/2", Quarter, "dtheta[0,1/2](tau)",
        "-theta[0,1/2](tau)*(theta[0,0](tau)^2 - theta[0,0](2*tau)^2)",
        "Dθ[0;1/2] = −θ[0;1/2]·(th(1)² − th(2)²)",
        Some("overall sign is minus; the plus sign fails at q^{1/2}")),
    ("eq-1/21", Quarter, "dtheta[1/2,1](tau)", "i/2*theta[1/2,1](tau)*theta[0,0](1/2*tau)^2",
        "Dθ[1/2;1] = (i/2)·θ[1/2;1]·th(1/2)²", None),
    ("eq-1/20", Quarter, "dtheta[1/2,0](tau)",
        "i/2*theta[1/2,0](tau)*(2*theta[0,0](tau)^2 - theta[0,0](1/2*tau)^2)",
        "Dθ[1/2;0] = (i/2)·θ[1/2;0]·(2th(1)² − th(1/2)²)", None),
    ("eq-1/21/2", Quarter, "dtheta[1/2,1/2](tau)",
        "i/2*theta[1/2,1/2](tau)*(2*theta[0,0](2*tau)^2 - (1 + i)*theta[0,0](tau)^2 + i*theta[0,0](1/2*tau)^2)",
        "Dθ[1/2;1/2] = (i/2)·θ[1/2;1/2]·(2th(2)² − (1+i)th(1)² + i·th(1/2)²)", None),
    ("eq-1/23/2", Quarter, "dtheta[1/2,3/2](tau)",
        "i/2*theta[1/2,3/2](tau)*(2*theta[0,0](2*tau)^2 - (1 - i)*theta[0,0](tau)^2 - i*theta[0,0](1/2*tau)^2)",
        "Dθ[1/2;3/2] = (i/2)·θ[1/2;3/2]·(2th(2)² − (1−i)th(1)² − i·th(1/2)²)", None),
    // δ ∈ ¼ℤ
    ("eq-01/4", Quarter, "dtheta[0,1/4](tau)",
        "-theta[0,1/4](tau)*(sqrt(2)*theta[0,0](2*tau)*theta[1,0](4*tau) - theta[0,0](2*tau)^2 + theta[0,0](4*tau)^2)",
        "Dθ[0;1/4] = −θ[0;1/4]·(√2·th(2)·tt(4) − th(2)² + th(4)²)", None),
    ("eq-03/4", Quarter, "dtheta[0,3/4](tau)",
        "-theta[0,3/4](tau)*(sqrt(2)*theta[0,0](2*tau)*theta[1,0](4*tau) + theta[0,0](2*tau)^2 - theta[0,0](4*tau)^2)",
        "Dθ[0;3/4] = −θ[0;3/4]·(√2·th(2)·tt(4) + th(2)² − th(4)²)", None),
    ("eq-1/21/4", Quarter, "dtheta[1/2,1/4](tau)",
        "i/2*theta[1/2,1/4](tau)*(2*theta[0,0](4*tau)^2 - (1 - i)*theta[0,0](2*tau)^2 - i*theta[0,0](tau)^2 - sqrt(2)*theta[1,0](2*tau)*(theta[0,1](tau) - i*theta[0,0](tau)))",
        "Dθ[1/2;1/4] = (i/2)·θ[1/2;1/4]·(2th(4)² − (1−i)th(2)² − i·th(1)² − √2·tt(2)(hat(1) − i·th(1)))", None),
    ("eq-1/23/4", Quarter, "dtheta[1/2,3/4](tau)",
        "i/2*theta[1/2,3/4](tau)*(2*theta[0,0](4*tau)^2 - (1 + i)*theta[0,0](2*tau)^2 + i*theta[0,0](tau)^2 + sqrt(2)*theta[1,0](2*tau)*(theta[0,1](tau) + i*theta[0,0](tau)))",
        "Dθ[1/2;3/4] = (i/2)·θ[1/2;3/4]·(2th(4)² − (1+i)th(2)² + i·th(1)² + √2·tt(2)(hat(1) + i·th(1)))", None),
    ("eq-1/25/4", Quarter, "dtheta[1/2,5/4](tau)",
        "i/2*theta[1/2,5/4](tau)*(2*theta[0,0](4*tau)^2 - (1 - i)*theta[0,0](2*tau)^2 - i*theta[0,0](tau)^2 + sqrt(2)*theta[1,0](2*tau)*(theta[0,1](tau) - i*theta[0,0](tau)))",
        "Dθ[1/2;5/4] = (i/2)·θ[1/2;5/4]·(2th(4)² − (1−i)th(2)² − i·th(1)² + √2·tt(2)(hat(1) − i·th(1)))", None),
    ("eq-1/27/4", Quarter, "dtheta[1/2,7/4](tau)",
        "i/2*theta[1/2,7/4](tau)*(2*theta[0,0](4*tau)^2 - (1 + i)*theta[0,0](2*tau)^2 + i*theta[0,0](tau)^2 - sqrt(2)*theta[1,0](2*tau)*(theta[0,1](tau) + i*theta[0,0](tau)))",
        "Dθ[1/2;7/4] = (i/2)·θ[1/2;7/4]·(2th(4)² − (1+i)th(2)² + i·th(1)² − √2·tt(2)(hat(1) + i·th(1)))", None),
    // ε ∈ {1/4, 3/4}
    ("eq-1/41", Quarter, "dtheta[1/4,1](tau)",
        "i/4*theta[1/4,1](tau)*theta[0,0](1/4*tau)*(2*theta[0,0](1/2*tau) - theta[0,0](1/4*tau))",
        "Dθ[1/4;1] = (i/4)·θ[1/4;1]·th(1/4)·(2th(1/2) − th(1/4))", None),
    ("eq-3/41", Quarter, "dtheta[3/4,1](tau)",
        "i/4*theta[3/4,1](tau)*theta[0,0](1/4*tau)*(2*theta[0,0](1/2*tau) + theta[0,0](1/4*tau))",
        "Dθ[3/4;1] = (i/4)·θ[3/4;1]·th(1/4)·(2th(1/2) + th(1/4))", None),
    ("eq-1/40", Quarter, "dtheta[1/4,0](tau)",
        "i/4*theta[1/4,0](tau)*(2*theta[0,0](1/2*tau)*theta[0,1](1/4*tau) - 2*theta[0,0](1/2*tau)^2 + theta[0,0](1/4*tau)^2)",
        "Dθ[1/4;0] = (i/4)·θ[1/4;0]·(2th(1/2)·hat(1/4) − 2th(1/2)² + th(1/4)²)", None),
    ("eq-3/40", Quarter, "dtheta[3/4,0](tau)",
        "i/4*theta[3/4,0](tau)*(2*theta[0,0](1/2*tau)*theta[0,1](1/4*tau) + 2*theta[0,0](1/2*tau)^2 - theta[0,0](1/4*tau)^2)",
        "Dθ[3/4;0] = (i/4)·θ[3/4;0]·(2th(1/2)·hat(1/4) + 2th(1/2)² − th(1/4)²)", None),
    ("eq-1/41/2", Quarter, "dtheta[1/4,1/2](tau)",
        "i/4*theta[1/4,1/2](tau)*(2*theta[0,1](1/2*tau)*(theta[0,0](tau) - i*theta[1,0](tau)) - 2*theta[0,0](tau)^2 + (1 - i)*theta[0,0](1/2*tau)^2 + i*theta[0,0](1/4*tau)^2)",
        "Dθ[1/4;1/2] = (i/4)·θ[1/4;1/2]·(2hat(1/2)(th(1) − i·tt(1)) − 2th(1)² + (1−i)th(1/2)² + i·th(1/4)²)",
        Some("the bracket holds tt(1), not tt(1/4)")),
    ("eq-1/43/2", Quarter, "dtheta[1/4,3/2](tau)",
        "i/4*theta[1/4,3/2](tau)*(2*theta[0,1](1/2*tau)*(theta[0,0](tau) + i*theta[1,0](tau)) - 2*theta[0,0](tau)^2 + (1 + i)*theta[0,0](1/2*tau)^2 - i*theta[0,0](1/4*tau)^2)",
        "Dθ[1/4;3/2] = (i/4)·θ[1/4;3/2]·(2hat(1/2)(th(1) + i·tt(1)) − 2th(1)² + (1+i)th(1/2)² − i·th(1/4)²)",
        Some("the bracket holds tt(1), not tt(1/4)")),
    ("eq-3/41/2", Quarter, "dtheta[3/4,1/2](tau)",
        "i/4*theta[3/4,1/2](tau)*(2*theta[0,1](1/2*tau)*(theta[0,0](tau) + i*theta[1,0](tau)) + 2*theta[0,0](tau)^2 - (1 + i)*theta[0,0](1/2*tau)^2 + i*theta[0,0](1/4*tau)^2)",
        "Dθ[3/4;1/2] = (i/4)·θ[3/4;1/2]·(2hat(1/2)(th(1) + i·tt(1)) + 2th(1)² − (1+i)th(1/2)² + i·th(1/4)²)",
        Some("the bracket holds tt(1), not tt(1/4)")),
    ("eq-3/43/2", Quarter, "dtheta[3/4,3/2](tau)",
        "i/4*theta[3/4,3/2](tau)*(2*theta[0,1](1/2*tau)*(theta[0,0](tau) - i*theta[1,0](tau)) + 2*theta[0,0](tau)^2 - (1 - i)*theta[0,0](1/2*tau)^2 - i*theta[0,0](1/4*tau)^2)",
        "Dθ[3/4;3/2] = (i/4)·θ[3/4;3/2]·(2hat(1/2)(th(1) − i·tt(1)) + 2th(1)² − (1−i)th(1/2)² − i·th(1/4)²)",
        Some("the bracket holds tt(1), not tt(1/4)")),
    // integral ε, δ ∈ {1/3, 2/3} and ε ∈ {1/3, 2/3}, integral δ
    ("eq-11/3", Third, "dtheta[1,1/3](tau)", "-sqrt(3)/3*theta[1,1/3](tau)*Theta3(2*tau)",
        "Dθ[1;1/3] = −(1/√3)·θ[1;1/3]·T3(2)", None),
    ("eq-01/3", Third, "dtheta[0,1/3](tau)", "-sqrt(3)/3*theta[0,1/3](tau)*(Theta3(tau) - Theta3(2*tau))",
        "Dθ[0;1/3] = −(1/√3)·θ[0;1/3]·(T3(1) − T3(2))", None),
    ("eq-1/31", Third, "dtheta[1/3,1](tau)", "i/3*theta[1/3,1](tau)*Theta3(2/3*tau)",
        "Dθ[1/3;1] = (i/3)·θ[1/3;1]·T3(2/3)", None),
    ("eq-1/30", Third, "dtheta[1/3,0](tau)", "i/3*theta[1/3,0](tau)*(2*Theta3(4/3*tau) - Theta3(2/3*tau))",
        "Dθ[1/3;0] = (i/3)·θ[1/3;0]·(2T3(4/3) − T3(2/3))", None),
    ("eq-12/3", Third, "dtheta[1,2/3](tau)", "-sqrt(3)/3*theta[1,2/3](tau)*(2*Theta3(4*tau) + Theta3(2*tau))",
        "Dθ[1;2/3] = −(1/√3)·θ[1;2/3]·(2T3(4) + T3(2))", None),
    ("eq-02/3", Third, "dtheta[0,2/3](tau)",
        "-sqrt(3)/3*theta[0,2/3](tau)*(Theta3(tau) + Theta3(2*tau) - 2*Theta3(4*tau))",
        "Dθ[0;2/3] = −(1/√3)·θ[0;2/3]·(T3(1) + T3(2) − 2T3(4))", None),
    ("eq-2/31", Third, "dtheta[2/3,1](tau)", "i/3*theta[2/3,1](tau)*(Theta3(1/3*tau) + Theta3(2/3*tau))",
        "Dθ[2/3;1] = (i/3)·θ[2/3;1]·(T3(1/3) + T3(2/3))", None),
    ("eq-2/30", Third, "dtheta[2/3,0](tau)",
        "i/3*theta[2/3,0](tau)*(2*Theta3(4/3*tau) - Theta3(1/3*tau) + Theta3(2/3*tau))",
        "Dθ[2/3;0] = (i/3)·θ[2/3;0]·(2T3(4/3) − T3(1/3) + T3(2/3))", None),
    // both ε and δ non-integral thirds; z3 = zeta(3,1), its conjugate zeta(3,2)
    ("eq-1/31/3", Third, "dtheta[1/3,1/3](tau)",
        "i/3*theta[1/3,1/3](tau)*(zeta(3,1)*Theta3(2/3*tau) + i*zeta(3,2)*sqrt(3)*Theta3(2*tau))",
        "Dθ[1/3;1/3] = (i/3)·θ[1/3;1/3]·(ζ3·T3(2/3) + i·ζ̄3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-1/35/3", Third, "dtheta[1/3,5/3](tau)",
        "i/3*theta[1/3,5/3](tau)*(zeta(3,2)*Theta3(2/3*tau) - i*zeta(3,1)*sqrt(3)*Theta3(2*tau))",
        "Dθ[1/3;5/3] = (i/3)·θ[1/3;5/3]·(ζ̄3·T3(2/3) − i·ζ3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-1/32/3", Third, "dtheta[1/3,2/3](tau)",
        "i/3*theta[1/3,2/3](tau)*(2*zeta(3,1)*Theta3(4/3*tau) - zeta(3,2)*Theta3(2/3*tau) + 2*i*zeta(3,2)*sqrt(3)*Theta3(4*tau) + i*zeta(3,1)*sqrt(3)*Theta3(2*tau))",
        "Dθ[1/3;2/3] = (i/3)·θ[1/3;2/3]·(2ζ3·T3(4/3) − ζ̄3·T3(2/3) + 2i·ζ̄3·√3·T3(4) + i·ζ3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-1/34/3", Third, "dtheta[1/3,4/3](tau)",
        "i/3*theta[1/3,4/3](tau)*(2*zeta(3,2)*Theta3(4/3*tau) - zeta(3,1)*Theta3(2/3*tau) - 2*i*zeta(3,1)*sqrt(3)*Theta3(4*tau) - i*zeta(3,2)*sqrt(3)*Theta3(2*tau))",
        "Dθ[1/3;4/3] = (i/3)·θ[1/3;4/3]·(2ζ̄3·T3(4/3) − ζ3·T3(2/3) − 2i·ζ3·√3·T3(4) − i·ζ̄3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-2/31/3", Third, "dtheta[2/3,1/3](tau)",
        "i/3*theta[2/3,1/3](tau)*(zeta(3,1)*Theta3(1/3*tau) + zeta(3,2)*Theta3(2/3*tau) + i*zeta(3,2)*sqrt(3)*Theta3(tau) - i*zeta(3,1)*sqrt(3)*Theta3(2*tau))",
        "Dθ[2/3;1/3] = (i/3)·θ[2/3;1/3]·(ζ3·T3(1/3) + ζ̄3·T3(2/3) + i·ζ̄3·√3·T3(1) − i·ζ3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-2/35/3", Third, "dtheta[2/3,5/3](tau)",
        "i/3*theta[2/3,5/3](tau)*(zeta(3,2)*Theta3(1/3*tau) + zeta(3,1)*Theta3(2/3*tau) - i*zeta(3,1)*sqrt(3)*Theta3(tau) + i*zeta(3,2)*sqrt(3)*Theta3(2*tau))",
        "Dθ[2/3;5/3] = (i/3)·θ[2/3;5/3]·(ζ̄3·T3(1/3) + ζ3·T3(2/3) − i·ζ3·√3·T3(1) + i·ζ̄3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-2/32/3", Third, "dtheta[2/3,2/3](tau)",
        "i/3*theta[2/3,2/3](tau)*(2*zeta(3,2)*Theta3(4/3*tau) - zeta(3,2)*Theta3(1/3*tau) + zeta(3,1)*Theta3(2/3*tau) - 2*i*zeta(3,1)*sqrt(3)*Theta3(4*tau) + i*zeta(3,1)*sqrt(3)*Theta3(tau) + i*zeta(3,2)*sqrt(3)*Theta3(2*tau))",
        "Dθ[2/3;2/3] = (i/3)·θ[2/3;2/3]·(2ζ̄3·T3(4/3) − ζ̄3·T3(1/3) + ζ3·T3(2/3) − 2i·ζ3·√3·T3(4) + i·ζ3·√3·T3(1) + i·ζ̄3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    ("eq-2/34/3", Third, "dtheta[2/3,4/3](tau)",
        "i/3*theta[2/3,4/3](tau)*(2*zeta(3,1)*Theta3(4/3*tau) - zeta(3,1)*Theta3(1/3*tau) + zeta(3,2)*Theta3(2/3*tau) + 2*i*zeta(3,2)*sqrt(3)*Theta3(4*tau) - i*zeta(3,2)*sqrt(3)*Theta3(tau) - i*zeta(3,1)*sqrt(3)*Theta3(2*tau))",
        "Dθ[2/3;4/3] = (i/3)·θ[2/3;4/3]·(2ζ3·T3(4/3) − ζ3·T3(1/3) + ζ̄3·T3(2/3) + 2i·ζ̄3·√3·T3(4) − i·ζ̄3·√3·T3(1) − i·ζ3·√3·T3(2))",
        Some("prefactor +i/3 with ζ3 and its conjugate in these positions")),
    // integral characteristics as eta quotients
    ("intchar-10", ConstantLevel, "theta[1,0](tau)", "2*eta(2*tau)^2/eta(tau)",
        "θ[1;0] = 2η²(2τ)/η(τ)", None),
    ("intchar-01", ConstantLevel, "theta[0,1](tau)", "eta(1/2*tau)^2/eta(tau)",
        "θ[0;1] = η²(τ/2)/η(τ)", None),
    ("intchar-00", ConstantLevel, "theta[0,0](tau)", "eta(tau)^5/(eta(2*tau)^2*eta(1/2*tau)^2)",
        "θ[0;0] = η⁵(τ)/(η²(2τ)η²(τ/2))", None),
    // splitting θ[0;0] by parity of the summation index
    ("pardecom-1", ConstantLevel, "theta[0,0](tau)", "theta[0,0](4*tau) + theta[1,0](4*tau)",
        "th(1) = th(4) + tt(4)", None),
    ("pardecom-2", ConstantLevel, "theta[0,0](tau)", "2*theta[0,0](4*tau) - theta[0,1](tau)",
        "th(1) = 2th(4) − hat(1)", None),
    ("etaid-1", ConstantLevel, "eta(tau)^5/(eta(1/2*tau)^2*eta(2*tau)^2)",
        "(eta(4*tau)^6 + 2*eta(2*tau)^2*eta(8*tau)^4)/(eta(2*tau)^2*eta(4*tau)*eta(8*tau)^2)",
        "η⁵(τ)/(η²(τ/2)η²(2τ)) = (η⁶(4τ) + 2η²(2τ)η⁴(8τ))/(η²(2τ)η(4τ)η²(8τ))", None),
    ("etaid-2", ConstantLevel, "eta(tau)^5/(eta(1/2*tau)^2*eta(2*tau)^2)",
        "(2*eta(tau)*eta(4*tau)^5 - eta(1/2*tau)^2*eta(2*tau)^2*eta(8*tau)^2)/(eta(tau)*eta(2*tau)^2*eta(8*tau)^2)",
        "η⁵(τ)/(η²(τ/2)η²(2τ)) = (2η(τ)η⁵(4τ) − η²(τ/2)η²(2τ)η²(8τ))/(η(τ)η²(2τ)η²(8τ))", None),
    // weight-3/2 sums
    ("eta3-fourier", ConstantLevel, "eta(tau)^3", "wsum[-4](1/8*tau)",
        "η³(τ) = Σ_{n≥0} n(−4/n) q^{n²/8}",
        Some("the sum starts at n = 0, i.e. with q^{1/8}")),
    ("foureta-1", ConstantLevel,
        "(eta(tau)^14*eta(4*tau)^4 - eta(2*tau)^14*eta(1/2*tau)^4)/(eta(1/2*tau)^4*eta(tau)^4*eta(2*tau)^2*eta(4*tau)^5)",
        "4*wsum[-4](1/2*tau)",
        "(η¹⁴(τ)η⁴(4τ) − η¹⁴(2τ)η⁴(τ/2))/(η⁴(τ/2)η⁴(τ)η²(2τ)η⁵(4τ)) = 4Σ n(−4/n) q^{n²/2}",
        Some("numerator is η¹⁴(τ)η⁴(4τ) − η¹⁴(2τ)η⁴(τ/2); the opposite order gives −4Σ")),
    ("foureta-2", ConstantLevel, "eta(1/2*tau)^9/(eta(1/4*tau)^3*eta(tau)^3)", "wsum[-2](1/32*tau)",
        "η⁹(τ/2)/(η³(τ/4)η³(τ)) = Σ n(−2/n) q^{n²/32}", None),
    ("foureta-3", ConstantLevel,
        "(2*eta(tau)^14*eta(1/4*tau)^4 - eta(1/2*tau)^14*eta(2*tau)^4)/(eta(1/4*tau)^5*eta(1/2*tau)^2*eta(tau)^4*eta(2*tau)^4)",
        "wsum[-4](1/32*tau)",
        "(2η¹⁴(τ)η⁴(τ/4) − η¹⁴(τ/2)η⁴(2τ))/(η⁵(τ/4)η²(τ/2)η⁴(τ)η⁴(2τ)) = Σ n(−4/n) q^{n²/32}", None),
    ("constcomp-eta3-1", ConstantLevel,
        "(eta(tau)^14*eta(4*tau)^4 - eta(2*tau)^14*eta(1/2*tau)^4)/(eta(1/2*tau)^4*eta(tau)^4*eta(2*tau)^2*eta(4*tau)^5)",
        "4*eta(4*tau)^3",
        "the first weight-3/2 eta combination equals 4η³(4τ)", None),
    ("constcomp-eta3-2", ConstantLevel,
        "(2*eta(tau)^14*eta(1/4*tau)^4 - eta(1/2*tau)^14*eta(2*tau)^4)/(eta(1/4*tau)^5*eta(1/2*tau)^2*eta(tau)^4*eta(2*tau)^4)",
        "eta(1/4*tau)^3",
        "the third weight-3/2 eta combination equals η³(τ/4)", None),
    // half-integral characteristics as eta quotients and rescaled theta constants
    ("foureta-theta-01/2", ConstantLevel, "theta[0,1/2](tau)", "eta(2*tau)^2/eta(4*tau)",
        "θ[0;1/2] = η²(2τ)/η(4τ)", None),
    ("foureta-theta-1/21", ConstantLevel, "theta[1/2,1](tau)", "zeta(8,1)*eta(tau)*eta(1/4*tau)/eta(1/2*tau)",
        "θ[1/2;1] = ζ8·η(τ)η(τ/4)/η(τ/2)", None),
    ("foureta-theta-1/20", ConstantLevel, "theta[1/2,0](tau)", "eta(1/2*tau)^2/eta(1/4*tau)",
        "θ[1/2;0] = η²(τ/2)/η(τ/4)", None),
    ("foureta-theta-11/2", ConstantLevel, "theta[1,1/2](tau)", "sqrt(2)*eta(tau)*eta(4*tau)/eta(2*tau)",
        "θ[1;1/2] = √2·η(τ)η(4τ)/η(2τ)", None),
    ("constcomp-1", ConstantLevel, "theta[0,1/2](tau)", "theta[0,1](4*tau)",
        "θ[0;1/2](τ) = θ[0;1](4τ)", None),
    ("constcomp-2", ConstantLevel, "theta[1/2,0](tau)", "1/2*theta[1,0](1/4*tau)",
        "θ[1/2;0](τ) = (1/2)·θ[1;0](τ/4)",
        Some("factor 1/2: θ[1;0](τ/4) = 2η²(τ/2)/η(τ/4)")),
    ("constcomp-3", ConstantLevel, "theta[1,1/2](tau)", "(1 - i)*theta[1/2,1](4*tau)",
        "θ[1;1/2](τ) = √2·ζ̄8·θ[1/2;1](4τ) = (1 − i)·θ[1/2;1](4τ)",
        Some("constant √2·ζ̄8 = 1 − i, found by the ratio probe")),
    // third characteristics as eta quotients
    ("etaover3-11/3", ConstantLevel, "theta[1,1/3](tau)", "sqrt(3)*eta(3*tau)",
        "θ[1;1/3] = √3·η(3τ)", None),
    ("etaover3-01/3", ConstantLevel, "theta[0,1/3](tau)", "eta(tau)^2*eta(3/2*tau)/(eta(1/2*tau)*eta(3*tau))",
        "θ[0;1/3] = η²(τ)η(3τ/2)/(η(τ/2)η(3τ))", None),
    ("etaover3-1/31", ConstantLevel, "theta[1/3,1](tau)", "zeta(12,1)*eta(1/3*tau)",
        "θ[1/3;1] = ζ12·η(τ/3)", None),
    ("etaover3-1/30", ConstantLevel, "theta[1/3,0](tau)", "eta(tau)^2*eta(2/3*tau)/(eta(2*tau)*eta(1/3*tau))",
        "θ[1/3;0] = η²(τ)η(2τ/3)/(η(2τ)η(τ/3))", None),
    ("etaover3-12/3", ConstantLevel, "theta[1,2/3](tau)", "eta(tau)^2*eta(6*tau)/(eta(2*tau)*eta(3*tau))",
        "θ[1;2/3] = η²(τ)η(6τ)/(η(2τ)η(3τ))", None),
    ("etaover3-02/3", ConstantLevel, "theta[0,2/3](tau)",
        "eta(3*tau)^2*eta(2*tau)*eta(1/2*tau)/(eta(tau)*eta(3/2*tau)*eta(6*tau))",
        "θ[0;2/3] = η²(3τ)η(2τ)η(τ/2)/(η(τ)η(3τ/2)η(6τ))", None),
    ("etaover3-2/31", ConstantLevel, "theta[2/3,1](tau)",
        "zeta(6,1)*eta(tau)^2*eta(1/6*tau)/(eta(1/2*tau)*eta(1/3*tau))",
        "θ[2/3;1] = ζ6·η²(τ)η(τ/6)/(η(τ/2)η(τ/3))", None),
    ("etaover3-2/30", ConstantLevel, "theta[2/3,0](tau)",
        "eta(1/3*tau)^2*eta(2*tau)*eta(1/2*tau)/(eta(tau)*eta(2/3*tau)*eta(1/6*tau))",
        "θ[2/3;0] = η²(τ/3)η(2τ)η(τ/2)/(η(τ)η(2τ/3)η(τ/6))", None),
    ("etaover3-ninth", ConstantLevel, "theta[1,1/3](tau)", "zeta(12,11)*sqrt(3)*theta[1/3,1](9*tau)",
        "θ[1;1/3](τ) = ζ̄12·√3·θ[1/3;1](9τ)", None),
    ("etaover3-theta3", ConstantLevel, "Theta3(tau)",
        "eta(tau)^5*eta(3*tau)^5/(eta(1/2*tau)^2*eta(2*tau)^2*eta(3/2*tau)^2*eta(6*tau)^2) + 4*eta(2*tau)^2*eta(6*tau)^2/(eta(tau)*eta(3*tau))",
        "Θ₃ as a sum of two eta quotients", None),
    // weight-one series
    ("theta1-i", SeriesLevel, "divsum[quad4,all,one,none,1](tau)", "theta[0,0](tau)^2",
        "1 + 4ΣΣ_{odd d|N}(−1/d) q^{N/2} = th(1)²", None),
    ("theta1-ii", SeriesLevel, "divsum[quad8,all,one,none,1](tau)", "theta[0,0](tau)*theta[0,0](2*tau)",
        "1 + 2ΣΣ_{odd d|N}(−2/d) q^{N/2} = th(1)·th(2)", None),
    ("theta1-iii", SeriesLevel, "divsum[chi3,all,one,none,1](tau)",
        "theta[0,0](tau)*theta[0,0](3*tau) + theta[1,0](tau)*theta[1,0](3*tau)",
        "1 + 6ΣΣ_{d|N}(d/3) q^{N/2} = th(1)th(3) + tt(1)tt(3)", None),
    ("pow2twist-i-odd", SeriesLevel, "divsum[quad4,all,one,odd,0](tau)", "theta[0,0](tau)^2 - theta[0,0](2*tau)^2",
        "odd-N part of the quad4 series = th(1)² − th(2)²", None),
    ("pow2twist-i-alternating", SeriesLevel, "divsum[quad4,all,one,alt,1](tau)",
        "2*theta[0,0](2*tau)^2 - theta[0,0](tau)^2",
        "quad4 series with (−1)^N = 2th(2)² − th(1)²", None),
    ("pow2twist-ii-odd", SeriesLevel, "divsum[quad8,all,one,odd,0](tau)", "theta[0,0](2*tau)*theta[1,0](4*tau)",
        "odd-N part of the quad8 series = th(2)·tt(4)", None),
    ("pow2twist-ii-alternating", SeriesLevel, "divsum[quad8,all,one,alt,1](tau)", "theta[0,0](2*tau)*theta[0,1](tau)",
        "quad8 series with (−1)^N = th(2)·hat(1)", None),
    ("pow2twist-iii-quad8", SeriesLevel, "divsum[quad8,all,one,chi4,0](tau)", "theta[1,0](4*tau)*theta[0,1](2*tau)",
        "odd-N part of the quad8 series times (−1/N) = tt(4)·hat(2)", None),
    ("pow2twist-iii-quad4", SeriesLevel, "divsum[quad4,all,one,chi4,0](tau)", "divsum[quad4,all,one,odd,0](tau)",
        "odd-N part of the quad4 series is unchanged by (−1/N)", None),
    ("pow3twist-i-odd", SeriesLevel, "divsum[chi3,all,one,odd,0](tau)", "Theta3(tau) - Theta3(4*tau)",
        "odd-N part of Θ₃ = T3(1) − T3(4)", None),
    ("pow3twist-i-alternating", SeriesLevel, "divsum[chi3,all,one,alt,1](tau)", "2*Theta3(4*tau) - Theta3(tau)",
        "Θ₃ with (−1)^N = 2T3(4) − T3(1)", None),
    ("pow3twist-i-coprime-to-3", SeriesLevel, "divsum[chi3,all,one,no3,0](tau)", "Theta3(tau) - Theta3(3*tau)",
        "part of Θ₃ with 3 ∤ N = T3(1) − T3(3)", None),
    ("pow3twist-ii-odd-divisors", SeriesLevel, "divsum[chi3,dodd,one,none,2](tau)", "Theta3(tau) + Theta3(2*tau)",
        "Θ₃ divisor sum over odd d = T3(1) + T3(2)", None),
    ("pow3twist-ii-odd-codivisors", SeriesLevel, "divsum[chi3,codd,one,none,0](tau)", "Theta3(tau) - Theta3(2*tau)",
        "Θ₃ divisor sum over d with N/d odd = T3(1) − T3(2)", None),
    ("pow3twist-iii-sign-d", SeriesLevel, "divsum[chi3,all,signd,none,-3](tau)", "-Theta3(tau) - 2*Theta3(2*tau)",
        "Θ₃ divisor sum weighted by (−1)^d = −T3(1) − 2T3(2)", None),
    ("pow3twist-iii-sign-codivisor", SeriesLevel, "divsum[chi3,all,signcod,none,1](tau)",
        "2*Theta3(2*tau) - Theta3(tau)",
        "Θ₃ divisor sum weighted by (−1)^{N/d} = 2T3(2) − T3(1)",
        Some("sign: 2T3(2) − T3(1), not T3(1) − 2T3(2); N = 1 gives −6")),
    ("pow3twist-iii-zeta6", SeriesLevel, "divsum[chi3z6,all,one,none,3](tau)", "Theta3(tau) + 2*Theta3(2*tau)",
        "Θ₃ divisor sum with ζ6 in place of ζ3 = T3(1) + 2T3(2)", None),
    ("pow3twist-iv-zeta6-odd-divisors", SeriesLevel, "divsum[chi3z6,dodd,one,none,2](tau)",
        "divsum[chi3,dodd,one,none,2](tau)",
        "ζ6 and ζ3 divisor sums agree over odd d", None),
    ("pow3twist-iv-zeta6-odd-codivisors", SeriesLevel, "divsum[chi3z6,codd,one,none,0](tau)",
        "Theta3(tau) + Theta3(2*tau) - 2*Theta3(4*tau)",
        "ζ6 divisor sum over d with N/d odd = T3(1) + T3(2) − 2T3(4)", None),
];

fn build() -> Vec<IdentityRecord> {
    let mut out: Vec<IdentityRecord> = ROWS
        .iter()
        .map(|(id, family, lhs, rhs, anchor, note)| IdentityRecord {
            id: id.to_string(),
            family: *family,
            lhs: parse_expr(lhs).unwrap_or_else(|e| panic!("{id} lhs: {e}")),
            rhs: parse_expr(rhs).unwrap_or_else(|e| panic!("{id} rhs: {e}")),
            anchor: anchor.to_string(),
            note: note.map(str::to_string),
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Every identity record, sorted by id.
pub fn registry() -> &'static [IdentityRecord] {
    static REG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REG.get_or_init(build)
}

pub fn find(id: &str) -> Option<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id)
}
