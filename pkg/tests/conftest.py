import pytest

from teag_lab import ATTRIBUTE, ENTITY, EntityAttributeView, GraphBuilder


@pytest.fixture
def person_record_view():
    """Two Person records sharing an email attribute node.

    u -> smith@x.com (hasEmail), u -> 555-1234 (hasPhone),
    v -> smith@x.com (hasEmail), v -> 42 Main St (hasAddr).
    """
    b = GraphBuilder()
    person = b.node_type("Person", ENTITY)
    email_t = b.node_type("Email", ATTRIBUTE)
    phone_t = b.node_type("Phone", ATTRIBUTE)
    addr_t = b.node_type("Address", ATTRIBUTE)
    has_email = b.edge_type("hasEmail")
    has_phone = b.edge_type("hasPhone")
    has_addr = b.edge_type("hasAddr")
    u = b.node(person, "u")
    v = b.node(person, "v")
    email = b.node(email_t, "smith@x.com")
    phone = b.node(phone_t, "555-1234")
    addr = b.node(addr_t, "42 Main St")
    b.edge(u, email, has_email)
    b.edge(u, phone, has_phone)
    b.edge(v, email, has_email)
    b.edge(v, addr, has_addr)
    return EntityAttributeView.from_kinds(b.build())


@pytest.fixture
def noisy_name_view():
    """Two Person records with distinct name nodes but one shared phone node."""
    b = GraphBuilder()
    person = b.node_type("Person", ENTITY)
    name_t = b.node_type("Name", ATTRIBUTE)
    phone_t = b.node_type("Phone", ATTRIBUTE)
    has_name = b.edge_type("hasName")
    has_phone = b.edge_type("hasPhone")
    u = b.node(person, "u")
    v = b.node(person, "v")
    name_u = b.node(name_t, "John Smith")
    name_v = b.node(name_t, "John F. Smith")
    phone = b.node(phone_t, "555-0000")
    b.edge(u, name_u, has_name)
    b.edge(u, phone, has_phone)
    b.edge(v, name_v, has_name)
    b.edge(v, phone, has_phone)
    return EntityAttributeView.from_kinds(b.build())


def build_simple_cycle(length):
    """Directed cycle graph on `length` nodes, one node and edge type."""
    b = GraphBuilder()
    sigma = b.node_type("sigma")
    tau = b.edge_type("tau1")
    nodes = [b.node(sigma, f"c{i}") for i in range(length)]
    for i in range(length):
        b.edge(nodes[i], nodes[(i + 1) % length], tau)
    return b.build()
