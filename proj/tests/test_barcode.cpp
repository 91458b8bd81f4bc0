#include <string>

#include <doctest.h>

#include "parambar/barcode.hpp"

using namespace parambar;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

PersistenceDiagram sample_diagram() {
    PersistenceDiagram d;
    d.num_steps = 100;
    d.step_size = 0.0622;
    d.persistence_threshold = 0.2;
    d.zero_length_dropped = 3;
    d.intervals = {
        {0, 0, 17},
        {0, 0, static_cast<int>(kInfiniteDeath)},
        {1, 18, 95},
        {1, 40, 44},
    };
    return d;
}

}  // namespace

TEST_CASE("run labels follow the index convention") {
    RunLabel plain{7, 5, 96, std::nullopt};
    CHECK(plain.to_string() == "(7,5,96)");
    CHECK(plain.file_tag() == "(7,5,96)");

    RunLabel filtered{10, 5, 98, 165};
    CHECK(filtered.to_string() == "(10,5,98) cluster 165");
    CHECK(filtered.file_tag() == "(10,5,98)_cluster165");
}

TEST_CASE("text rendering lists intervals grouped by dimension") {
    const std::string text = render_text(sample_diagram(), RunLabel{10, 5, 100, std::nullopt});
    CHECK(text ==
          "barcode (10,5,100)\n"
          "num_steps 100\n"
          "step_size 0.0622\n"
          "persistence_threshold 0.2\n"
          "zero_length_dropped 3\n"
          "H0\n"
          "  [0, 17)  length 17\n"
          "  [0, inf)  length 100  persistent\n"
          "H1\n"
          "  [18, 95)  length 77  persistent\n"
          "  [40, 44)  length 4\n");
}

TEST_CASE("empty diagram renders a placeholder") {
    PersistenceDiagram d;
    d.num_steps = 50;
    d.step_size = 0.1;
    const RunLabel label{10, 0, 50, std::nullopt};
    CHECK(count_of(render_text(d, label), "no intervals") == 1);
    const std::string svg = render_svg(d, label);
    CHECK(count_of(svg, "no intervals") == 1);
    CHECK(count_of(svg, "class=\"bar\"") == 0);
}

TEST_CASE("svg bars, arrows and emphasis") {
    const PersistenceDiagram d = sample_diagram();
    const RunLabel label{10, 5, 100, std::nullopt};
    const std::string svg = render_svg(d, label);

    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(count_of(svg, "class=\"bar\"") == d.intervals.size());
    CHECK(count_of(svg, "class=\"arrow\"") == 1);
    // Persistent bars carry the heavy stroke: the infinite H0 and the long H1.
    CHECK(count_of(svg, "stroke-width=\"3\"") == 2);
    CHECK(count_of(svg, "barcode (10,5,100)") == 1);
    // One legend entry per populated dimension.
    CHECK(count_of(svg, ">H0</text>") == 2);  // legend + row gutter
    CHECK(count_of(svg, ">H1</text>") == 2);
    // Geometry: fixed width, height grows with the bar count.
    CHECK(svg.find("width=\"900.00\"") != std::string::npos);
    CHECK(svg.find("height=\"280.00\"") != std::string::npos);  // 70 + 4*40 + 50
}

TEST_CASE("renders are byte-stable") {
    const PersistenceDiagram d = sample_diagram();
    const RunLabel label{10, 5, 100, 165};
    CHECK(render_text(d, label) == render_text(d, label));
    CHECK(render_svg(d, label) == render_svg(d, label));
}

TEST_CASE("infinite bars stop at the plot edge with an arrowhead") {
    PersistenceDiagram d;
    d.num_steps = 10;
    d.step_size = 1.0;
    d.intervals = {{0, 0, static_cast<int>(kInfiniteDeath)}};
    const std::string svg = render_svg(d, RunLabel{10, 0, 10, std::nullopt});
    CHECK(count_of(svg, "class=\"arrow\"") == 1);
    // Bar spans the full axis: x = 70, width = 900 - 70 - 40.
    CHECK(svg.find("x=\"70.00\" y=\"81.00\" width=\"790.00\"") != std::string::npos);
}
