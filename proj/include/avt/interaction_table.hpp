#pragma once

#include <string>
#include <vector>

#include "avt/riemann.hpp"

namespace avt {

enum class EventKind { Init, WaveWave, WaveAV, ControlJump };
const char* to_string(EventKind k);

struct InteractionRecord {
  double t = 0.0;
  double x = 0.0;
  EventKind kind = EventKind::WaveWave;
  std::string classification;  // e.g. "2-FW/1-NFW-PT-2"
  std::string row;             // matched table row, empty if none
  double dFw = 0.0, dFv = 0.0;
  int dN = 0;
  double dxi = 0.0;
  double xi_minus = 0.0, xi_plus = 0.0;
  double u_minus = 0.0, u_plus = 0.0;
  // Classical wave taking part in the event (AV traces for control jumps).
  State wave_left, wave_right;
  State av_left, av_right;  // AV traces before the event
  int n_first_created = 0;
  double F_v_before = 0.0;
  int N_before = 0;
  std::string notes;
};

// One front as seen by the pattern matcher: its admissible labels.
struct Token {
  std::vector<std::string> labels;
};

// Labels a classical front may carry. Fronts touching the phase boundary admit
// several names (a PT with a boundary end is also an LW, etc).
Token token_for(const Model& m, const Front& f);

// Collapses consecutive 1-fronts (pieces of one rarefaction or shock) into one token.
std::vector<Token> compress_first(const std::vector<Token>& toks, const std::vector<WaveKind>& kinds);

std::string render(const std::vector<Token>& before, const std::vector<Token>& after);

// Returns the matching row name for the event kind, or "" when nothing matches.
std::string match_row(EventKind kind, const std::vector<Token>& before,
                      const std::vector<Token>& after);

// Checks the functional deltas of a record against its row. Empty when clean.
std::vector<std::string> check_record(const Model& m, const InteractionRecord& r);

// All row names, for documentation and tests.
std::vector<std::string> table_rows();

}  // namespace avt
