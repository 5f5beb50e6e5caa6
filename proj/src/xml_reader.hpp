#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridsight::detail {

struct XmlAttribute {
  std::string name;
  std::string value;
};

class XmlHandler {
 public:
  virtual ~XmlHandler() = default;
  virtual void start_element(std::string_view name, const std::vector<XmlAttribute>& attributes,
                             std::size_t offset) = 0;
  virtual void end_element(std::string_view name) = 0;
};

/// Minimal well-formedness-checking XML scanner: elements, attributes, the five
/// predefined entities and numeric character references. Comments, processing
/// instructions, CDATA and DOCTYPE are skipped. Text content is ignored.
/// Throws ParseError at the offending byte.
void scan_xml(std::string_view document, XmlHandler& handler);

}  // namespace gridsight::detail
