#include "osm_fixtures.hpp"

#include <cstdio>
#include <vector>

namespace osm_fixtures {

const char* const kThreeNodeWay = R"(<?xml version="1.0" encoding="UTF-8"?>
<osm version="0.6" generator="hand">
  <bounds minlat="45.0" minlon="7.0" maxlat="45.01" maxlon="7.01"/>
  <node id="1" lat="45.0000" lon="7.0000"/>
  <node id="2" lat="45.0010" lon="7.0000"/>
  <node id="3" lat="45.0020" lon="7.0005">
    <tag k="amenity" v="school"/>
  </node>
  <way id="10">
    <nd ref="1"/>
    <nd ref="2"/>
    <nd ref="3"/>
    <tag k="highway" v="residential"/>
    <tag k="name" v="Via Roma"/>
  </way>
</osm>
)";

const char* const kMissingRef = R"(<osm version="0.6">
  <node id="1" lat="45.0" lon="7.0"/>
  <node id="2" lat="45.001" lon="7.0"/>
  <way id="10"><nd ref="1"/><nd ref="2"/><tag k="highway" v="residential"/></way>
  <way id="11"><nd ref="2"/><nd ref="99"/><tag k="highway" v="residential"/></way>
</osm>
)";

// 1 (west) - 6 - 5 - 2 (east), 3 (south) - 5 - 4 (north).
const char* const kCrossing = R"(<osm version="0.6">
  <node id="1" lat="45.0000" lon="6.9980"/>
  <node id="6" lat="45.0000" lon="6.9990"/>
  <node id="2" lat="45.0000" lon="7.0020"/>
  <node id="3" lat="44.9980" lon="7.0000"/>
  <node id="4" lat="45.0020" lon="7.0000"/>
  <node id="5" lat="45.0000" lon="7.0000"/>
  <way id="20"><nd ref="1"/><nd ref="6"/><nd ref="5"/><nd ref="2"/><tag k="highway" v="residential"/></way>
  <way id="21"><nd ref="3"/><nd ref="5"/><nd ref="4"/><tag k="highway" v="tertiary"/></way>
</osm>
)";

const char* const kMixedTags = R"(<osm version="0.6">
  <node id="1" lat="45.0000" lon="7.0000"/>
  <node id="2" lat="45.0010" lon="7.0000"/>
  <node id="3" lat="45.0010" lon="7.0010"/>
  <node id="4" lat="45.0000" lon="7.0010"/>
  <way id="30"><nd ref="1"/><nd ref="2"/><tag k="highway" v="residential"/><tag k="oneway" v="yes"/></way>
  <way id="31"><nd ref="2"/><nd ref="3"/><tag k="highway" v="motorway"/></way>
  <way id="32"><nd ref="3"/><nd ref="4"/><tag k="highway" v="footway"/></way>
  <way id="33"><nd ref="4"/><nd ref="1"/><tag k="highway" v="living_street"/><tag k="oneway" v="-1"/></way>
</osm>
)";

// Square 1-2-3-4 plus spur 3 - 7 - 8 - 9 ending at 9.
const char* const kDeadEnd = R"(<osm version="0.6">
  <node id="1" lat="45.0000" lon="7.0000"/>
  <node id="2" lat="45.0010" lon="7.0000"/>
  <node id="3" lat="45.0010" lon="7.0010"/>
  <node id="4" lat="44.9995" lon="7.0010"/>
  <node id="7" lat="45.0015" lon="7.0013"/>
  <node id="8" lat="45.0020" lon="7.0012"/>
  <node id="9" lat="45.0026" lon="7.0016"/>
  <way id="40"><nd ref="1"/><nd ref="2"/><nd ref="3"/><nd ref="4"/><nd ref="1"/><tag k="highway" v="residential"/></way>
  <way id="41"><nd ref="3"/><nd ref="7"/><nd ref="8"/><nd ref="9"/><tag k="highway" v="service"/></way>
  <way id="42"><nd ref="3"/><nd ref="7"/><nd ref="8"/><nd ref="9"/><tag k="highway" v="unclassified"/></way>
</osm>
)";

double grid_lat(std::size_t r) { return 45.0 + 0.001 * static_cast<double>(r); }
double grid_lon(std::size_t c) { return 7.0 + 0.0014 * static_cast<double>(c); }

std::string grid_extract(std::size_t rows, std::size_t cols, std::size_t mids) {
  std::string xml = "<?xml version=\"1.0\"?>\n<osm version=\"0.6\">\n";
  char buf[160];
  auto node = [&](std::size_t id, double lat, double lon) {
    std::snprintf(buf, sizeof buf, "  <node id=\"%zu\" lat=\"%.7f\" lon=\"%.7f\"/>\n", id, lat, lon);
    xml += buf;
  };
  std::size_t next_shape = 5000;
  std::vector<std::string> ways;
  std::size_t way_id = 100;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) node(1000 + r * cols + c, grid_lat(r), grid_lon(c));
  }
  auto emit_line = [&](bool horizontal, std::size_t fixed, std::size_t count) {
    std::string way = "  <way id=\"" + std::to_string(way_id++) + "\">";
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t r = horizontal ? fixed : i;
      const std::size_t c = horizontal ? i : fixed;
      way += "<nd ref=\"" + std::to_string(1000 + r * cols + c) + "\"/>";
      if (i + 1 == count) break;
      for (std::size_t m = 1; m <= mids; ++m) {
        const double t = static_cast<double>(m) / static_cast<double>(mids + 1);
        const double lat = horizontal ? grid_lat(r) + 0.00005 * (m % 2) : grid_lat(r) + t * (grid_lat(r + 1) - grid_lat(r));
        const double lon = horizontal ? grid_lon(c) + t * (grid_lon(c + 1) - grid_lon(c)) : grid_lon(c) + 0.00005 * (m % 2);
        node(next_shape, lat, lon);
        way += "<nd ref=\"" + std::to_string(next_shape++) + "\"/>";
      }
    }
    way += "<tag k=\"highway\" v=\"residential\"/></way>\n";
    ways.push_back(way);
  };
  for (std::size_t r = 0; r < rows; ++r) emit_line(true, r, cols);
  for (std::size_t c = 0; c < cols; ++c) emit_line(false, c, rows);
  for (const auto& w : ways) xml += w;
  xml += "</osm>\n";
  return xml;
}

}  // namespace osm_fixtures
