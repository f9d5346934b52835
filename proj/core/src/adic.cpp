#include "dercat/adic.hpp"

namespace dercat {

AdicVerdict is_adically_finite(const DvrObject& x, DvrIdeal a) {
  AdicVerdict out;
  out.subject = "DVR object " + to_string(x);
  if (a == DvrIdeal::zero) {
    // K(empty) = R, R/(0) = R, RHom(R, X) = X: all three ask plain finiteness
    bool fg = dvr_fg(x);
    out.conditions.koszul_fg = fg;
    out.conditions.quotient_fg = fg;
    out.conditions.rhom_fg = fg;
    out.conditions.completion_fg = dvr_fg(dvr_lambda(x, DvrIdeal::zero));
    out.conditions.notes = "closed forms over the DVR, ideal (0)";
    out.support_ok = true;  // V(0) is all of Spec
  } else {
    auto t1 = dvr_t(1, 0, x.complete);
    out.conditions.koszul_fg = dvr_fg(dvr_tensor(t1, x));  // K(t) (x) X = T(1) (x)^L X
    out.conditions.quotient_fg = dvr_fg(dvr_tensor(t1, x));
    out.conditions.rhom_fg = dvr_fg(dvr_rhom(t1, x));
    try {
      out.conditions.completion_fg = dvr_fg(dvr_lambda(x, DvrIdeal::max));
      out.conditions.notes = "closed forms over the DVR, ideal m";
    } catch (const error& e) {
      if (e.code() != errc::incomplete_ambient) throw;
      out.conditions.completion_fg.reset();
      out.conditions.notes = "closed forms over the DVR, ideal m; (iv) omitted: ambient not complete";
    }
    out.support_ok = dvr_supp(x).subset_of(DvrSpecSet{false, true});
  }
  require(out.conditions.agree(), errc::condition_disagreement,
          "adic finiteness conditions disagree on " + out.subject);
  out.verdict = out.conditions.koszul_fg && out.support_ok;
  return out;
}

GammaCheckReport gamma_preserves_adic_finiteness(const DvrObject& x, DvrIdeal a, DvrIdeal b) {
  require(!(a == DvrIdeal::max && b == DvrIdeal::zero), errc::precondition_failed, "need a <= b");
  GammaCheckReport out;
  auto pre = is_adically_finite(x, a);
  require(pre.verdict, errc::precondition_failed, "X is not a-adically finite");
  out.precondition_ok = true;
  auto g = dvr_gamma(x, b);
  auto post = is_adically_finite(g, b);
  out.support_ok = post.support_ok;
  out.pass = post.verdict;
  out.notes = "RGamma_b X = " + to_string(g) + (post.verdict ? ", b-adically finite" : ", NOT b-adically finite");
  return out;
}

}  // namespace dercat
