#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "jscc/errors.hpp"
#include "jscc/io/config.hpp"

namespace jscc {

namespace {

constexpr std::string_view kFig3 = R"({
  "schema": 1,
  "name": "fig3",
  "seed": 1,
  "defaults": {"snr_db": {"from": 0, "to": 80, "step": 5}, "fit": [40, 80]},
  "curves": [
    {"label": "scheme1 alpha=3", "codec": "scheme1:N=4,alpha=3"},
    {"label": "scheme1 alpha=4", "codec": "scheme1:N=4,alpha=4"},
    {"label": "shift-map a=3", "codec": "shift_map:N=4,a=3", "fit": [50, 80]},
    {"label": "repetition", "codec": "repetition:N=4"}
  ],
  "overlays": [
    {"kind": "opta_slb", "n": 4, "label": "OPTA N=4"},
    {"kind": "scheme1", "n": 4, "alpha": 3, "anchor": "scheme1 alpha=3"},
    {"kind": "scheme1", "n": 4, "alpha": 4, "anchor": "scheme1 alpha=4"}
  ],
  "plot": {"title": "N = 4: scheme1, shift map, repetition", "x_range": [0, 80]}
}
)";

constexpr std::string_view kFig4 = R"({
  "schema": 1,
  "name": "fig4",
  "seed": 1,
  "defaults": {"snr_db": {"from": 0, "to": 100, "step": 5}, "fit": [40, 100]},
  "curves": [
    {"label": "scheme2 standard", "codec": "scheme2:N=4,P=62"},
    {"label": "scheme2 shifted", "codec": "scheme2:N=4,variant=shifted,P=62"}
  ],
  "overlays": [
    {"kind": "opta_slb", "n": 4, "label": "OPTA N=4"},
    {"kind": "scheme2", "n": 4, "anchor": "scheme2 standard"}
  ],
  "plot": {"title": "scheme2, N = 4", "x_range": [0, 100]}
}
)";

constexpr std::string_view kBoundsGallery = R"({
  "schema": 1,
  "name": "bounds-gallery",
  "seed": 1,
  "defaults": {"snr_db": {"from": 10, "to": 80, "step": 5}, "fit": [40, 80]},
  "curves": [
    {"label": "shift-map a=auto", "codec": "shift_map:N=2,a=auto"},
    {"label": "type1 k=auto", "codec": "type1:N=2,k=auto"},
    {"label": "type2 k=auto", "codec": "type2:N=2,k=auto,P=60"}
  ],
  "overlays": [
    {"kind": "opta_slb", "n": 2, "label": "OPTA N=2"},
    {"kind": "shift_map_upper", "n": 2, "anchor": "shift-map a=auto"},
    {"kind": "type1", "n": 2, "anchor": "type1 k=auto"},
    {"kind": "type2", "n": 2, "anchor": "type2 k=auto"},
    {"kind": "hybrid", "n": 2, "m": 1, "anchor": "type2 k=auto", "label": "hybrid M=1"}
  ],
  "plot": {"title": "N = 2: designed per SNR", "x_range": [10, 80]}
}
)";

constexpr std::string_view kDimensionCheck = R"({
  "schema": 1,
  "name": "dimension-check",
  "seed": 1,
  "analyses": [
    {"type": "dimension", "label": "scheme1 alpha=4", "codec": "scheme1:N=2,alpha=4", "reference": 1.0},
    {"type": "dimension", "label": "scheme1 alpha=8", "codec": "scheme1:N=2,alpha=8", "reference": 0.6666666666666666},
    {"type": "dimension", "label": "repetition", "codec": "repetition:N=2", "reference": 1.0},
    {"type": "stretch", "label": "scheme1 alpha=4 stretch", "codec": "scheme1:N=2,alpha=4", "reference": 1.0},
    {"type": "stretch", "label": "shift-map a=4 stretch", "codec": "shift_map:N=2,a=4", "metric": "torus", "reference": 2.0}
  ]
}
)";

struct Preset {
  std::string_view name;
  std::string_view text;
};

constexpr std::array<Preset, 4> kPresets{{
    {"fig3", kFig3},
    {"fig4", kFig4},
    {"bounds-gallery", kBoundsGallery},
    {"dimension-check", kDimensionCheck},
}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

std::string_view preset_text(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.text;
  }
  std::string known;
  for (const auto& p : kPresets) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace jscc
