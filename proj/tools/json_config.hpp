#pragma once

// CLI11 config reader for JSON files: nested objects are subcommand sections,
// except that options listed in `json_options` take a whole object or array
// as their (serialized) value.

#include <CLI11.hpp>
#include <json.hpp>

#include <set>
#include <string>
#include <vector>

class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::set<std::string> json_options) : json_options_(std::move(json_options)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  void walk(const nlohmann::ordered_json& j, const std::vector<std::string>& parents,
            std::vector<CLI::ConfigItem>& items) const {
    for (const auto& [key, value] : j.items()) {
      const bool json_valued = !parents.empty() && json_options_.count(key) > 0;
      if (value.is_object() && !json_valued) {
        auto inner = parents;
        inner.push_back(key);
        items.push_back({inner, "++", {}});  // opens the subcommand section
        walk(value, inner, items);
        items.push_back({inner, "--", {}});
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_string()) {
        item.inputs = {value.get<std::string>()};
      } else if (value.is_boolean()) {
        item.inputs = {value.get<bool>() ? "true" : "false"};
      } else {
        item.inputs = {value.dump()};
      }
      items.push_back(std::move(item));
    }
  }

  std::set<std::string> json_options_;
};
