// Copyright 2026 The crec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/fixtures.h"

#include <string>

namespace crec::testing {
namespace {

const std::string kBodyHead =
    "    int count = 0;\n"
    "    double sum = 0.0;\n"
    "    for (Item item : items) {\n"
    "      if (item.isActive()) {\n"
    "        sum += item.getPrice() * rate;\n"
    "        count++;\n"
    "      }\n"
    "    }\n";

std::string tail(const std::string& tag, bool with_log = true) {
  std::string out;
  if (with_log) out += "    log(\"" + tag + "\", average);\n";
  out += "    return (int) Math.round(average * 100);\n  }\n";
  return out;
}

std::string signature(const std::string& name) {
  return "  public int " + name + "(List<Item> items, double rate) {\n";
}

std::string guarded(const std::string& name, const std::string& tag) {
  return signature(name) + "    if (items == null) return 0;\n" + kBodyHead +
         "    double average = count > 0 ? sum / count : 0.0;\n" + tail(tag);
}

std::string extracted(const std::string& name, const std::string& tag,
                      const std::string& call, bool guard = false) {
  return signature(name) + (guard ? "    if (items == null) return 0;\n" : "") +
         "    double average = " + call + "(items, rate);\n" + tail(tag);
}

std::string deleted_line(const std::string& name, const std::string& tag) {
  return signature(name) + kBodyHead +
         "    double average = count > 0 ? sum / count : 0.0;\n" +
         tail(tag, /*with_log=*/false);
}

std::string helper_method(const std::string& name, bool is_static = false) {
  return std::string("  ") + (is_static ? "public static" : "private") + " double " +
         name + "(List<Item> items, double rate) {\n" + kBodyHead +
         "    return count > 0 ? sum / count : 0.0;\n  }\n";
}

std::string audit_method() {
  return "  private double audit(List<Item> items, double rate) {\n"
         "    System.out.println(\"audit \" + items.size());\n"
         "    Logger.getGlobal().info(\"rate \" + rate);\n"
         "    return rate;\n  }\n";
}

std::string extras(const std::string& cls) {
  return "  private final String label = \"" + cls + "\";\n\n"
         "  public String getLabel() {\n    return label;\n  }\n\n"
         "  private void log(String key, double value) {\n"
         "    System.out.println(key + value);\n  }\n";
}

// A method whose identifiers and literals are unique to cls, so that
// classes holding one copied method each are not clones of each other.
std::string own_method(const std::string& cls) {
  std::string out = "  public String describe" + cls + "() {\n";
  for (int i = 0; i < 20; ++i) {
    const std::string v = cls + "Part" + std::to_string(i);
    out += "    String " + v + " = \"" + v + "\";\n";
  }
  out += "    return " + cls + "Part0 + " + cls + "Part19;\n  }\n";
  return out;
}

std::string java_class(const std::string& pkg, const std::string& cls,
                       const std::string& methods) {
  return "package " + pkg + ";\n\nimport java.util.List;\n\npublic class " + cls +
         " {\n" + extras(cls) + "\n" + own_method(cls) + "\n" + methods + "}\n";
}

std::string filler(int commit) {
  std::string out;
  for (int i = 0; i < 220; ++i) {
    out += "entry " + std::to_string(commit) + " " + std::to_string(i) + "\n";
  }
  return out;
}

class Builder {
 public:
  explicit Builder(const std::string& name) : repo_(std::make_unique<FixtureRepo>(name)) {}

  void commit(const std::string& message, const std::string& author = "Alice") {
    repo_->write("notes/log.txt", filler(commits_));
    repo_->commit(message, author, author + "@example.com");
    ++commits_;
  }
  FixtureRepo& repo() { return *repo_; }
  std::unique_ptr<FixtureRepo> release() { return std::move(repo_); }

 private:
  std::unique_ptr<FixtureRepo> repo_;
  int commits_ = 0;
};

const std::string kPkg = "app";
const std::string kOrders = "src/main/java/app/OrderService.java";

ScenarioRepo same_file(const std::string& name) {
  Builder b(name);
  const auto v0 = clone_method("processAlpha", "alpha") + "\n" +
                  clone_method("processBeta", "beta") + "\n" +
                  clone_method("processGamma", "gamma");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v0));
  b.commit("initial import");
  b.repo().write("src/main/java/app/Item.java",
                 "package app;\n\npublic class Item {\n  private double price;\n"
                 "  public double getPrice() {\n    return price;\n  }\n"
                 "  public boolean isActive() {\n    return price > 0;\n  }\n}\n");
  b.commit("add item", "Bob");
  const auto v2 = extracted("processAlpha", "alpha", "computeAverage") + "\n" +
                  extracted("processBeta", "beta", "computeAverage") + "\n" +
                  clone_method("processGamma", "gamma") + "\n" +
                  helper_method("computeAverage");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v2));
  b.commit("extract average computation");
  b.commit("update notes", "Bob");
  ScenarioRepo out;
  out.repo = b.release();
  out.planted = {{kOrders, "processAlpha"}, {kOrders, "processBeta"}};
  out.helper = "computeAverage";
  out.refactor_version = 2;
  return out;
}

ScenarioRepo across_files(const std::string& name) {
  Builder b(name);
  const std::string pa = "src/a/b/d/ReportA.java";
  const std::string pb = "src/a/c/b/d/ReportB.java";
  const std::string pc = "src/a/e/ReportC.java";
  const std::string ps = "src/a/util/Stats.java";
  b.repo().write(pa, java_class("a.b.d", "ReportA", clone_method("summarizeA", "a")));
  b.repo().write(pb, java_class("a.c.b.d", "ReportB", clone_method("summarizeB", "b")));
  b.repo().write(pc, java_class("a.e", "ReportC", clone_method("summarizeC", "c")));
  b.commit("initial reports");
  b.commit("notes", "Carol");
  b.repo().write(pa, java_class("a.b.d", "ReportA",
                                extracted("summarizeA", "a", "Stats.computeAverage")));
  b.repo().write(pb, java_class("a.c.b.d", "ReportB",
                                extracted("summarizeB", "b", "Stats.computeAverage")));
  b.repo().write(ps, java_class("a.util", "Stats", helper_method("computeAverage", true)));
  b.commit("move averaging into Stats", "Carol");
  b.commit("more notes");
  ScenarioRepo out;
  out.repo = b.release();
  out.planted = {{pa, "summarizeA"}, {pb, "summarizeB"}};
  out.helper = "computeAverage";
  out.refactor_version = 2;
  return out;
}

ScenarioRepo later(const std::string& name) {
  Builder b(name);
  const std::string names[] = {"totalNorth", "totalSouth", "totalEast", "totalWest"};
  std::string v0;
  for (const auto& n : names) v0 += clone_method(n, n) + "\n";
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v0));
  b.commit("initial import");
  std::string v1;
  for (const auto& n : names) v1 += guarded(n, n) + "\n";
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v1));
  b.commit("guard against null lists", "Bob");
  b.commit("notes");
  std::string v3;
  for (int k = 0; k < 3; ++k) v3 += extracted(names[k], names[k], "averagePrice", true) + "\n";
  v3 += guarded(names[3], names[3]) + "\n" + helper_method("averagePrice");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v3));
  b.commit("extract averagePrice", "Bob");
  b.commit("notes again");
  ScenarioRepo out;
  out.repo = b.release();
  for (int k = 0; k < 3; ++k) out.planted.emplace_back(kOrders, names[k]);
  out.helper = "averagePrice";
  out.refactor_version = 3;
  return out;
}

ScenarioRepo control_deletion(const std::string& name) {
  Builder b(name);
  const auto v0 = clone_method("processAlpha", "alpha") + "\n" +
                  clone_method("processBeta", "beta") + "\n" +
                  clone_method("processGamma", "gamma");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v0));
  b.commit("initial import");
  b.commit("notes", "Bob");
  const auto v2 = deleted_line("processAlpha", "alpha") + "\n" +
                  deleted_line("processBeta", "beta") + "\n" +
                  clone_method("processGamma", "gamma");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v2));
  b.commit("drop logging");
  b.commit("notes again", "Bob");
  ScenarioRepo out;
  out.repo = b.release();
  return out;
}

ScenarioRepo control_unrelated(const std::string& name) {
  Builder b(name);
  const auto v0 = clone_method("processAlpha", "alpha") + "\n" +
                  clone_method("processBeta", "beta") + "\n" +
                  clone_method("processGamma", "gamma");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v0));
  b.commit("initial import");
  b.commit("notes", "Bob");
  const auto v2 = extracted("processAlpha", "alpha", "audit") + "\n" +
                  extracted("processBeta", "beta", "audit") + "\n" +
                  clone_method("processGamma", "gamma") + "\n" + audit_method();
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v2));
  b.commit("audit instead of averaging");
  b.commit("notes again", "Bob");
  ScenarioRepo out;
  out.repo = b.release();
  return out;
}

// Clone body built from identifiers unique to cls; revision adds a line.
std::string tally_method(const std::string& cls, const std::string& name, int revision) {
  const std::string e = cls + "Entry";
  std::string out = "  public long " + name + "(List<" + e + "> " + cls + "Entries) {\n"
                    "    long " + cls + "Total = 0;\n"
                    "    for (" + e + " entry : " + cls + "Entries) {\n"
                    "      if (entry.is" + cls + "Ready() && entry.weight() > " +
                    std::to_string(cls.size()) + ") {\n"
                    "        " + cls + "Total += entry.weight() * " + cls + "Factor;\n"
                    "      }\n";
  if (revision > 0) out += "      " + cls + "Total -= entry.penalty();\n";
  out += "    }\n    return " + cls + "Total;\n  }\n";
  return out;
}

}  // namespace

ScenarioRepo build_pipeline_fixture(const std::string& name) {
  Builder b(name);
  const std::string others[] = {"Ledger", "Inventory", "Shipping"};
  auto write_others = [&](int revision) {
    for (const auto& cls : others) {
      b.repo().write("src/main/java/app/" + cls + ".java",
                     java_class(kPkg, cls,
                                tally_method(cls, "tallyFirst", revision) + "\n" +
                                    tally_method(cls, "tallySecond", revision)));
    }
  };
  const auto v0 = clone_method("processAlpha", "alpha") + "\n" +
                  clone_method("processBeta", "beta") + "\n" +
                  clone_method("processGamma", "gamma");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v0));
  write_others(0);
  b.commit("initial import");
  b.commit("notes", "Bob");
  write_others(1);
  b.commit("apply penalties", "Carol");
  const auto v3 = extracted("processAlpha", "alpha", "computeAverage") + "\n" +
                  extracted("processBeta", "beta", "computeAverage") + "\n" +
                  clone_method("processGamma", "gamma") + "\n" +
                  helper_method("computeAverage");
  b.repo().write(kOrders, java_class(kPkg, "OrderService", v3));
  b.commit("extract average computation");
  b.commit("notes again", "Bob");
  ScenarioRepo out;
  out.repo = b.release();
  out.planted = {{kOrders, "processAlpha"}, {kOrders, "processBeta"}};
  out.helper = "computeAverage";
  out.refactor_version = 3;
  return out;
}

const char* scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kExtractSameFile: return "extract_same_file";
    case Scenario::kExtractAcrossFiles: return "extract_across_files";
    case Scenario::kExtractLater: return "extract_later";
    case Scenario::kControlDeletion: return "control_deletion";
    case Scenario::kControlUnrelated: return "control_unrelated";
  }
  return "unknown";
}

void PrintTo(Scenario scenario, std::ostream* os) { *os << scenario_name(scenario); }

bool is_planted(Scenario scenario) {
  return scenario == Scenario::kExtractSameFile ||
         scenario == Scenario::kExtractAcrossFiles ||
         scenario == Scenario::kExtractLater;
}

std::string clone_method(const std::string& name, const std::string& tag) {
  return signature(name) + kBodyHead +
         "    double average = count > 0 ? sum / count : 0.0;\n" + tail(tag);
}

ScenarioRepo build_scenario(Scenario scenario) {
  const std::string name = scenario_name(scenario);
  switch (scenario) {
    case Scenario::kExtractSameFile: return same_file(name);
    case Scenario::kExtractAcrossFiles: return across_files(name);
    case Scenario::kExtractLater: return later(name);
    case Scenario::kControlDeletion: return control_deletion(name);
    case Scenario::kControlUnrelated: return control_unrelated(name);
  }
  return same_file(name);
}

}  // namespace crec::testing
