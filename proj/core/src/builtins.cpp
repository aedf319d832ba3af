#include "normfsi/builtins.hpp"

#include "normfsi/error.hpp"

namespace normfsi {

namespace {

constexpr std::optional<Symbol> e = std::nullopt;

Transition tr(StateId from, Label label, StateId to) { return Transition{from, std::move(label), to}; }

std::vector<Alphabet> binary(std::size_t tapes) { return std::vector<Alphabet>(tapes, Alphabet(2)); }

KAutomaton fig2_join() {
  return KAutomaton(binary(3), 2, {0},
                    {tr(0, {0, e, 0}, 1), tr(0, {1, e, 1}, 1), tr(1, {e, 0, 0}, 0), tr(1, {e, 1, 1}, 0)});
}

KAutomaton fig2_shuffle() {
  return KAutomaton(binary(3), 1, {0},
                    {tr(0, {0, e, 0}, 0), tr(0, {1, e, 1}, 0), tr(0, {e, 0, 0}, 0), tr(0, {e, 1, 1}, 0)});
}

KAutomaton fig3() {
  return KAutomaton(binary(2), 2, {0}, {tr(0, {0, e}, 0), tr(0, {1, e}, 1), tr(1, {e, 0}, 0), tr(1, {e, 1}, 0)});
}

KAutomaton fig5() {
  return KAutomaton(binary(2), 4, {0},
                    {tr(0, {0, e}, 2), tr(0, {1, e}, 3), tr(1, {0, e}, 2), tr(1, {1, e}, 3), tr(2, {e, 0}, 0),
                     tr(2, {e, 1}, 1), tr(3, {e, 1}, 0), tr(3, {e, 0}, 1)});
}

KAutomaton fig6_selector() {
  return KAutomaton(binary(3), 3, {0},
                    {tr(0, {e, 0, e}, 1), tr(0, {e, 1, e}, 2), tr(1, {0, e, e}, 0), tr(1, {1, e, e}, 0),
                     tr(2, {0, e, 0}, 0), tr(2, {1, e, 1}, 0)});
}

KAutomaton fig7_shuffler() {
  return KAutomaton(binary(3), 2, {0},
                    {tr(0, {0, e, 0}, 0), tr(0, {1, e, 1}, 1), tr(1, {e, 1, 1}, 0), tr(1, {e, 0, 0}, 1)});
}

KAutomaton copy_compressor() {
  return KAutomaton(binary(3), 1, {0}, {tr(0, {0, e, 0}, 0), tr(0, {1, e, 1}, 0)});
}

KAutomaton modsum_compressor() {
  return KAutomaton(binary(3), 1, {0},
                    {tr(0, {0, 0, 0}, 0), tr(0, {0, 1, 1}, 0), tr(0, {1, 0, 1}, 0), tr(0, {1, 1, 0}, 0)});
}

}  // namespace

KAutomaton builtin(std::string_view name) {
  if (name == "fig2-join") return fig2_join();
  if (name == "fig2-shuffle" || name == "fig4") return fig2_shuffle();
  if (name == "fig3") return fig3();
  if (name == "fig5") return fig5();
  if (name == "fig6-selector") return fig6_selector();
  if (name == "fig7-shuffler") return fig7_shuffler();
  if (name == "copy-compressor") return copy_compressor();
  if (name == "modsum-compressor") return modsum_compressor();
  throw Error("unknown builtin \"" + std::string(name) + "\"");
}

std::vector<std::string> builtin_names() {
  return {"fig2-join",     "fig2-shuffle",  "fig3",           "fig4",
          "fig5",          "fig6-selector", "fig7-shuffler",  "copy-compressor",
          "modsum-compressor"};
}

}  // namespace normfsi
