#include "xsec/fixtures.hpp"

#include <stdexcept>

namespace xsec {

namespace {

const char* kReconstructedNote =
    "RECONSTRUCTED: this data set was rebuilt from a worked textual\n"
    "description of the example rather than copied from an original\n"
    "diagram. Element order, instance shape, and annotation order follow\n"
    "the prose walkthrough; the invariants the walkthrough states (view\n"
    "productions, query answers, accessibility of named nodes) are pinned\n"
    "by the test suite.\n";

std::vector<Fixture> make_fixtures() {
    std::vector<Fixture> out;

    // A small non-recursive schema whose policy conditionally exposes A,
    // denies B outright, and denies C while re-granting C's child D, so that
    // D is promoted into A's content in the view.
    Fixture tiny;
    tiny.name = "tiny";
    tiny.dtd =
        "<!ELEMENT root (A)>\n"
        "<!ELEMENT A (C?,B?)>\n"
        "<!ELEMENT B EMPTY>\n"
        "<!ELEMENT C (D?)>\n"
        "<!ELEMENT D EMPTY>\n";
    tiny.ann =
        "ann(root,A) = [child::C]\n"
        "ann(A,B) = N\n"
        "ann(A,C) = N\n"
        "ann(C,D) = Y\n";
    tiny.xml = "<root><A><C><D/></C><B/></A></root>";
    tiny.definition1 = true;
    tiny.notes = kReconstructedNote;
    out.push_back(std::move(tiny));

    // Recursive schema with one conditional edge plus re-grants and
    // denials deeper down; used for the accessibility-predicate walkthrough.
    Fixture recursive;
    recursive.name = "recursive";
    recursive.dtd =
        "<!ELEMENT root (A*)>\n"
        "<!ELEMENT A (B|C|D)*>\n"
        "<!ELEMENT B (H*)>\n"
        "<!ELEMENT C (H|D)*>\n"
        "<!ELEMENT D (E|F)*>\n"
        "<!ELEMENT E (G|H)*>\n"
        "<!ELEMENT F (G|H)*>\n"
        "<!ELEMENT G (D|H)*>\n"
        "<!ELEMENT H EMPTY>\n";
    recursive.ann =
        "ann(root,A) = [child::D]\n"
        "ann(D,E) = Y\n"
        "ann(D,F) = N\n"
        "ann(C,H) = N\n";
    recursive.definition1 = true;
    recursive.notes = kReconstructedNote;
    out.push_back(std::move(recursive));

    // Same schema and policy as recursive, with a concrete instance: exactly
    // one H node (the one below the re-granted E chain) is accessible.
    Fixture recursiveDoc;
    recursiveDoc.name = "recursive-doc";
    recursiveDoc.dtd = out[1].dtd;
    recursiveDoc.ann = out[1].ann;
    recursiveDoc.xml =
        "<root><A><D><E><G><D><F><H/></F></D><H/></G></E></D>"
        "<C><H/></C></A></root>";
    recursiveDoc.queries = {{"accessible-h", "descendant::H"}};
    recursiveDoc.definition1 = true;
    recursiveDoc.notes = kReconstructedNote;
    out.push_back(std::move(recursiveDoc));

    // Recursive schema where denied B nodes are promoted past, making
    // step-by-step query rewriting over the view non-trivial.
    Fixture nested;
    nested.name = "nested";
    nested.dtd =
        "<!ELEMENT root (A*)>\n"
        "<!ELEMENT A (A|B)*>\n"
        "<!ELEMENT B (C|D)*>\n"
        "<!ELEMENT C (D*)>\n"
        "<!ELEMENT D (E|B)*>\n"
        "<!ELEMENT E EMPTY>\n";
    nested.ann =
        "ann(D,E) = Y\n"
        "ann(D,B) = N\n"
        "ann(C,D) = Y\n"
        "ann(A,B) = N\n";
    nested.xml =
        "<root>"
        "<A><B><D><E/></D></B></A>"
        "<A><A><B><D><E/></D></B></A></A>"
        "<A><B><C><D><E/></D></C></B></A>"
        "</root>";
    nested.queries = {
        {"child-a-child-e", "child::A/child::E"},
        {"desc-a-with-e", "descendant::A[child::E]"},
        {"desc-a-child-e", "descendant::A/child::E"},
    };
    nested.notes = kReconstructedNote;
    out.push_back(std::move(nested));

    // Hospital records: the running medical example with three benchmark
    // queries over patients whose visits mention one of three diagnoses.
    Fixture hospital;
    hospital.name = "hospital";
    hospital.dtd =
        "<!ELEMENT hospital (name,department*)>\n"
        "<!ELEMENT department (patient*)>\n"
        "<!ELEMENT patient (pname,address,parent?,sibling*,visit*)>\n"
        "<!ELEMENT parent (patient?)>\n"
        "<!ELEMENT sibling (patient?)>\n"
        "<!ELEMENT visit (date,treatment*)>\n"
        "<!ELEMENT treatment (medication*,test*,doctor?)>\n"
        "<!ELEMENT medication (diagnosis)>\n"
        "<!ELEMENT test (type*)>\n"
        "<!ELEMENT name (#PCDATA)>\n"
        "<!ELEMENT pname (#PCDATA)>\n"
        "<!ELEMENT address (#PCDATA)>\n"
        "<!ELEMENT date (#PCDATA)>\n"
        "<!ELEMENT doctor (#PCDATA)>\n"
        "<!ELEMENT diagnosis (#PCDATA)>\n"
        "<!ELEMENT type (#PCDATA)>\n";
    hospital.ann =
        "ann(hospital) = Y\n"
        "ann(hospital,name) = N\n"
        "ann(hospital,department) = N\n"
        "ann(department,patient) = [child::visit/child::treatment/child::medication"
        "[child::diagnosis = 'disease1' or child::diagnosis = 'disease2'"
        " or child::diagnosis = 'disease3']]_h\n"
        "ann(patient,pname) = N\n"
        "ann(patient,address) = N\n"
        "ann(patient,sibling) = N_h\n"
        "ann(visit,date) = N\n"
        "ann(visit,treatment) = N\n"
        "ann(medication,diagnosis) = Y\n"
        "ann(test,type) = Y\n";
    hospital.queries = {
        {"q1",
         "child::patient[descendant::visit[child::diagnosis = 'disease1'"
         " or child::diagnosis = 'disease2' or child::diagnosis = 'disease3']]"},
        {"q2",
         "descendant::patient[child::visit[child::diagnosis = 'disease1'"
         " or child::diagnosis = 'disease2' or child::diagnosis = 'disease3']"
         " and not(descendant::patient/child::visit[child::diagnosis = 'disease1'"
         " or child::diagnosis = 'disease2' or child::diagnosis = 'disease3'])]"},
        {"q3",
         "descendant::diagnosis[parent::visit/parent::*/parent::*/parent::*"
         "/parent::hospital]"},
    };
    hospital.notes = kReconstructedNote;
    out.push_back(std::move(hospital));

    return out;
}

} // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = make_fixtures();
    return all;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw std::out_of_range("no such fixture: " + name);
}

} // namespace xsec
