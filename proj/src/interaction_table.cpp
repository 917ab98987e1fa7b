#include "avt/interaction_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avt {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Init: return "init";
    case EventKind::WaveWave: return "wave-wave";
    case EventKind::WaveAV: return "wave-av";
    case EventKind::ControlJump: return "control";
  }
  return "?";
}

namespace {

struct Row {
  const char* pattern;
  EventKind kind;
};

constexpr Row kRows[] = {
    {"2-1/1-2", EventKind::WaveWave},
    {"LW-PT/PT-2", EventKind::WaveWave},
    {"LW-PT/PT", EventKind::WaveWave},
    {"1-1/1", EventKind::WaveWave},
    {"PT-1/PT", EventKind::WaveWave},

    {"2-FW/FW-2", EventKind::WaveAV},
    {"2-FW/1-NFW-PT-2", EventKind::WaveAV},
    {"PT-FW/FW-PT", EventKind::WaveAV},
    {"FW-PT/PT-FW", EventKind::WaveAV},
    {"LW-FW/FW-LW", EventKind::WaveAV},
    {"LW-FW/PT-NFW-LW", EventKind::WaveAV},
    {"FW-1/1-FW", EventKind::WaveAV},
    {"FW-1/1-NFW-PT", EventKind::WaveAV},
    {"2-NFW/1-NFW-LW", EventKind::WaveAV},
    {"PT-NFW/FW-LW", EventKind::WaveAV},
    {"NFW-PT/1-FW", EventKind::WaveAV},
    {"SNFW-PT/1-FW", EventKind::WaveAV},

    {"FW/FW", EventKind::ControlJump},
    {"FW/1-NFW-PT", EventKind::ControlJump},
    {"FW/PT-NFW-LW", EventKind::ControlJump},
    {"NFW/1-SNFW", EventKind::ControlJump},
    {"NFW/1-NFW", EventKind::ControlJump},
    {"SNFW/1-NFW", EventKind::ControlJump},
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> side(const std::string& s) {
  if (s.empty()) return {};
  return split(s, '-');
}

bool has(const Token& t, const std::string& l) {
  return std::find(t.labels.begin(), t.labels.end(), l) != t.labels.end();
}

bool match_side(const std::vector<Token>& toks, const std::vector<std::string>& want) {
  if (toks.size() != want.size()) return false;
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (!has(toks[i], want[i])) return false;
  return true;
}

void add(Token& t, const char* l) {
  if (!has(t, l)) t.labels.emplace_back(l);
}

}  // namespace

Token token_for(const Model& m, const Front& f) {
  Token t;
  t.labels.emplace_back(label(f.kind));
  if (is_av(f.kind)) return t;
  const Phase pl = m.phase(f.left), pr = m.phase(f.right);
  const bool bl = pl == Phase::Boundary, br = pr == Phase::Boundary;
  const bool same_w = std::abs(f.left.w - f.right.w) <= 1e-12 * m.params().w_max;
  if ((bl && pr == Phase::Free) || (pl == Phase::Free && br)) {
    add(t, "LW");
    add(t, "PT");
  }
  if (bl && pr == Phase::Congested && same_w) {
    add(t, "1");
    add(t, "PT");
  }
  if (bl && br) {
    add(t, "LW");
    add(t, "2");
    add(t, "1");
  }
  return t;
}

std::vector<Token> compress_first(const std::vector<Token>& toks, const std::vector<WaveKind>& kinds) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (kinds[i] == WaveKind::First && i + 1 < toks.size() && kinds[i + 1] == WaveKind::First) {
      std::size_t j = i;
      while (j + 1 < toks.size() && kinds[j + 1] == WaveKind::First) ++j;
      out.push_back(Token{{"1"}});
      i = j;
    } else {
      out.push_back(toks[i]);
    }
  }
  return out;
}

std::string render(const std::vector<Token>& before, const std::vector<Token>& after) {
  std::string s;
  for (std::size_t i = 0; i < before.size(); ++i) s += (i ? "-" : "") + before[i].labels.front();
  s += "/";
  for (std::size_t i = 0; i < after.size(); ++i) s += (i ? "-" : "") + after[i].labels.front();
  return s;
}

std::string match_row(EventKind kind, const std::vector<Token>& before,
                      const std::vector<Token>& after) {
  for (const auto& r : kRows) {
    if (r.kind != kind) continue;
    auto halves = split(r.pattern, '/');
    if (match_side(before, side(halves[0])) && match_side(after, side(halves[1]))) return r.pattern;
  }
  return {};
}

std::vector<std::string> table_rows() {
  std::vector<std::string> out;
  for (const auto& r : kRows) out.emplace_back(r.pattern);
  return out;
}

std::vector<std::string> check_record(const Model& m, const InteractionRecord& r) {
  std::vector<std::string> bad;
  if (r.kind == EventKind::Init) return bad;
  if (r.row.empty()) {
    bad.push_back("unclassified " + r.classification);
    return bad;
  }
  constexpr double tw = 1e-12, tv = 1e-10, tx = 1e-10;
  const auto& p = m.params();
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << r.row << " at t=" << r.t << ": " << what << " (dFw=" << r.dFw << " dFv=" << r.dFv
       << " dN=" << r.dN << " dxi=" << r.dxi << ")";
    bad.push_back(os.str());
  };
  auto zero_v = [&] { if (std::abs(r.dFv) > tv) fail("dFv != 0"); };
  auto nonpos_v = [&] { if (r.dFv > tv) fail("dFv > 0"); };
  auto n_eq = [&](int n) { if (r.dN != n) fail("dN != " + std::to_string(n)); };
  auto xi_zero = [&] { if (std::abs(r.dxi) > tx) fail("dxi != 0"); };
  auto xi_le = [&](double b) { if (std::abs(r.dxi) > b + tx) fail("|dxi| above bound"); };

  if (std::abs(r.dFw) > tw) fail("dFw != 0");

  const double vl = m.v_tilde(r.wave_left), vr = m.v_tilde(r.wave_right);
  const double du = r.u_plus - r.u_minus;
  const std::string& row = r.row;

  if (r.kind == EventKind::WaveWave) {
    nonpos_v();
    if (r.dN > 0) fail("dN > 0");
    xi_zero();
  } else if (row == "2-FW/FW-2" || row == "PT-FW/FW-PT" || row == "FW-PT/PT-FW" ||
             row == "FW-1/1-FW") {
    zero_v();
    n_eq(0);
    xi_le(std::abs(vl - vr));
  } else if (row == "2-FW/1-NFW-PT-2") {
    zero_v();
    n_eq(3);
    xi_zero();
  } else if (row == "LW-FW/FW-LW") {
    zero_v();
    n_eq(0);
    xi_zero();
  } else if (row == "LW-FW/PT-NFW-LW") {
    nonpos_v();
    n_eq(2);
    xi_zero();
  } else if (row == "FW-1/1-NFW-PT") {
    nonpos_v();
    n_eq(2);
    xi_le(vr - vl);
  } else if (row == "2-NFW/1-NFW-LW") {
    const double wl = r.wave_left.w;
    const double bound = 2.0 *
                         (p.C_psi * wl * p.L_F / (p.w_min * p.lambda_bar) + wl * p.C_psi * p.L_F + 1.0) *
                         std::abs(wl - r.wave_right.w);
    if (r.dFv > bound + tv) fail("dFv above the 2-NFW bound");
    if (r.dN > r.n_first_created) fail("dN above produced 1-front count");
    xi_zero();
  } else if (row == "PT-NFW/FW-LW") {
    zero_v();
    n_eq(-1);
    xi_zero();
  } else if (row == "NFW-PT/1-FW") {
    zero_v();
    n_eq(-1);
    xi_le(vl - vr);
  } else if (row == "SNFW-PT/1-FW") {
    zero_v();
    n_eq(-1);
    const double expect = m.speed(r.av_left) - m.speed(r.wave_right);
    if (std::abs(std::abs(r.dxi) - expect) > tx) fail("|dxi| != v(SNFW left) - v(PT right)");
  } else if (row == "FW/FW") {
    zero_v();
    n_eq(0);
    xi_le(std::abs(du));
  } else if (row == "FW/1-NFW-PT" || row == "FW/PT-NFW-LW") {
    zero_v();
    n_eq(3);
    xi_le(std::abs(du));
  } else if (row == "NFW/1-SNFW") {
    const double wl = r.av_left.w;
    const double bound = 2.0 * wl * p.C_psi * (p.f_alpha1(p.w_max) + p.R) / (p.w_min * p.lambda_bar) * du;
    if (r.dFv > bound + tv) fail("dFv above the NFW/1-SNFW bound");
    if (r.dN > 1 + r.n_first_created) fail("dN above 1 + produced 1-fronts");
    xi_le(std::abs(du));
  } else if (row == "NFW/1-NFW") {
    const double wl = r.av_left.w;
    const double bound =
        2.0 * wl * p.C_psi * (p.f_alpha1(wl) + p.R) / (wl * p.lambda_bar) * std::abs(du);
    if (r.dFv > bound + tv) fail("dFv above the NFW/1-NFW bound");
    if (r.dN > 1 + r.n_first_created) fail("dN above 1 + produced 1-fronts");
    xi_le(std::abs(du));
  } else if (row == "SNFW/1-NFW") {
    zero_v();
    n_eq(1);
    if (std::abs(std::abs(r.dxi) - std::abs(du)) > tx) fail("|dxi| != |du|");
  } else {
    fail("no checks for row");
  }
  return bad;
}

}  // namespace avt
