#include "vacuumprobe/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vacuumprobe/errors.hpp"

namespace vacuumprobe {

const std::vector<double>& SweepResult::observable(
    const std::string& name) const {
  for (const auto& [key, values] : observables) {
    if (key == name) return values;
  }
  throw DomainError("SweepResult: no observable named '" + name + "'");
}

}  // namespace vacuumprobe

namespace vacuumprobe::output {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_csv(const OutputRecord& record) {
  std::ostringstream out;
  if (record.sweep) {
    const SweepResult& s = *record.sweep;
    out << s.axis_name;
    for (const auto& [name, values] : s.observables) {
      (void)values;
      out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < s.axis_values.size(); ++i) {
      out << format_double(s.axis_values[i]);
      for (const auto& [name, values] : s.observables) {
        (void)name;
        out << ',' << format_double(values[i]);
      }
      out << '\n';
    }
  } else {
    out << "quantity,value\n";
    for (const auto& [name, value] : record.scalars) {
      out << name << ',' << format_double(value) << '\n';
    }
  }
  return out.str();
}

Json to_json(const OutputRecord& record) {
  Json j = Json::object();
  j["schema_version"] = record.schema_version;
  j["inputs"] = record.inputs;
  Json results = Json::object();
  if (record.sweep) {
    const SweepResult& s = *record.sweep;
    results["type"] = "sweep";
    results["axis_name"] = s.axis_name;
    results["axis_values"] = s.axis_values;
    Json obs = Json::object();
    for (const auto& [name, values] : s.observables) obs[name] = values;
    results["observables"] = obs;
    Json meta = Json::object();
    for (const auto& [key, value] : s.metadata) meta[key] = value;
    results["metadata"] = meta;
  } else {
    results["type"] = "scalars";
    Json vals = Json::object();
    for (const auto& [name, value] : record.scalars) vals[name] = value;
    results["values"] = vals;
  }
  j["results"] = results;
  Json prov = Json::object();
  prov["tool_version"] = record.tool_version;
  prov["timestamp"] = record.timestamp;
  j["provenance"] = prov;
  return j;
}

namespace {

void require_keys(const Json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
  if (!j.is_object()) throw IoError("OutputRecord: " + where + " not an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw IoError("OutputRecord: unknown field '" + it.key() + "' in " +
                    where);
    }
  }
}

}  // namespace

OutputRecord from_json(const Json& j) {
  require_keys(j, {"schema_version", "inputs", "results", "provenance"},
               "document root");
  OutputRecord record;
  record.schema_version = j.at("schema_version").get<std::string>();
  if (record.schema_version != "1") {
    throw IoError("OutputRecord: unsupported schema_version '" +
                  record.schema_version + "'");
  }
  record.inputs = j.at("inputs");
  const Json& results = j.at("results");
  std::string type = results.at("type").get<std::string>();
  if (type == "sweep") {
    require_keys(results,
                 {"type", "axis_name", "axis_values", "observables", "metadata"},
                 "results");
    SweepResult s;
    s.axis_name = results.at("axis_name").get<std::string>();
    s.axis_values = results.at("axis_values").get<std::vector<double>>();
    for (auto it = results.at("observables").begin();
         it != results.at("observables").end(); ++it) {
      s.observables.emplace_back(it.key(), it.value().get<std::vector<double>>());
    }
    for (auto it = results.at("metadata").begin();
         it != results.at("metadata").end(); ++it) {
      s.metadata.emplace_back(it.key(), it.value().get<std::string>());
    }
    record.sweep = std::move(s);
  } else if (type == "scalars") {
    require_keys(results, {"type", "values"}, "results");
    for (auto it = results.at("values").begin();
         it != results.at("values").end(); ++it) {
      record.scalars.emplace_back(it.key(), it.value().get<double>());
    }
  } else {
    throw IoError("OutputRecord: unknown results type '" + type + "'");
  }
  const Json& prov = j.at("provenance");
  require_keys(prov, {"tool_version", "timestamp"}, "provenance");
  record.tool_version = prov.at("tool_version").get<std::string>();
  record.timestamp = prov.at("timestamp").get<std::string>();
  return record;
}

std::string to_svg(const OutputRecord& record) {
  const int width = 640, height = 420;
  const int ml = 70, mr = 20, mt = 30, mb = 50;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  if (record.sweep && !record.sweep->axis_values.empty()) {
    const SweepResult& s = *record.sweep;
    double xmin = *std::min_element(s.axis_values.begin(), s.axis_values.end());
    double xmax = *std::max_element(s.axis_values.begin(), s.axis_values.end());
    double ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& [name, values] : s.observables) {
      (void)name;
      for (double v : values) {
        if (first) {
          ymin = ymax = v;
          first = false;
        }
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    auto sx = [&](double x) {
      return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto sy = [&](double y) {
      return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << (width - ml - mr) << "\" height=\"" << (height - mt - mb)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    for (const auto& [name, values] : s.observables) {
      out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4]
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ' ';
        out << sx(s.axis_values[i]) << ',' << sy(values[i]);
      }
      out << "\"/>\n";
      out << "<text x=\"" << (ml + 10) << "\" y=\"" << (mt + 16 + 14 * ci)
          << "\" fill=\"" << colors[ci % 4] << "\" font-size=\"12\">" << name
          << "</text>\n";
      ++ci;
    }
    out << "<text x=\"" << (width / 2) << "\" y=\"" << (height - 12)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << s.axis_name
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << (height / 2)
        << "\" transform=\"rotate(-90 14 " << (height / 2)
        << ")\" text-anchor=\"middle\" font-size=\"13\">value</text>\n";
    out << "<text x=\"" << ml << "\" y=\"" << (height - mb + 16)
        << "\" font-size=\"11\">" << format_double(xmin) << "</text>\n";
    out << "<text x=\"" << (width - mr) << "\" y=\"" << (height - mb + 16)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax)
        << "</text>\n";
    out << "<text x=\"" << (ml - 6) << "\" y=\"" << (height - mb)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymin)
        << "</text>\n";
    out << "<text x=\"" << (ml - 6) << "\" y=\"" << (mt + 10)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymax)
        << "</text>\n";
  } else {
    out << "<text x=\"20\" y=\"40\" font-size=\"13\">scalar result (no chart)"
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_outputs(const OutputRecord& record, const std::string& path_base,
                   const std::set<Format>& formats) {
  auto write_file = [&](const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("write failed for '" + path + "'");
  };
  if (formats.count(Format::Csv)) {
    write_file(path_base + ".csv", to_csv(record));
  }
  if (formats.count(Format::Json)) {
    write_file(path_base + ".json", to_json(record).dump(2) + "\n");
  }
  if (formats.count(Format::Svg)) {
    write_file(path_base + ".svg", to_svg(record));
  }
}

}  // namespace vacuumprobe::output
