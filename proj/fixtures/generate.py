#!/usr/bin/env python3
"""Regenerates the text fixtures in this directory.

Everything is derived from the tables below with a fixed seed, so running the
script twice produces identical files. Graphs and the trained model are built
afterwards by the CLI (see regenerate.sh).
"""

import csv
import io
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
RNG = random.Random(20211104)

# system, component, layout, [(argument, type, default, options, description)]
# A type of "" renders "Type:" with nothing after it; defaults given as one of
# the marker strings exercise empty-field normalization.
OFFICIAL = [
    ("Kubernetes", "kube-apiserver", "dl", [
        ("--authorization-mode", "strings", "AlwaysAllow", ["AlwaysAllow", "AlwaysDeny", "ABAC", "Webhook", "RBAC", "Node"],
         "Ordered list of plug-ins to do authorization on secure port."),
        ("--anonymous-auth", "bool", "true", ["true", "false"],
         "Enables anonymous requests to the secure port of the API server."),
        ("--profiling", "bool", "true", ["true", "false"],
         "Enable profiling via web interface host:port/debug/pprof/"),
        ("--kubelet-https", "bool", "true", ["true", "false"], "Use https for kubelet connections."),
        ("--service-account-lookup", "bool", "true", ["true", "false"],
         "If true, validate ServiceAccount tokens exist in etcd as part of authentication."),
        ("--audit-log-path", "string", None, None,
         "If set, all requests coming to the apiserver will be logged to this file."),
        ("--audit-log-maxage", "int", "0", None,
         "The maximum number of days to retain old audit log files based on the timestamp encoded in their filename."),
        ("--enable-admission-plugins", "strings", '""',
         ["AlwaysPullImages", "NodeRestriction", "PodSecurity", "EventRateLimit", "ServiceAccount"],
         "admission plugins that should be enabled in addition to default enabled ones."),
        ("--tls-min-version", "string", None, ["VersionTLS10", "VersionTLS11", "VersionTLS12", "VersionTLS13"],
         "Minimum TLS version supported."),
        ("--audit-policy-file", "string", None, None, "Path to the file that defines the audit policy configuration."),
    ]),
    ("Kubernetes", "kubelet", "table", [
        ("--anonymous-auth", "bool", "true", ["true", "false"],
         "Enables anonymous requests to the Kubelet server."),
        ("--read-only-port", "int32", "10255", ["0", "10255"],
         "The read-only port for the Kubelet to serve on with no authentication/authorization."),
        ("--protect-kernel-defaults", "bool", "false", ["true", "false"],
         "Default kubelet behaviour for kernel tuning."),
        ("--kube-reserved-cgroup", "", "''", None,
         "Absolute name of the top level cgroup that is used to manage kubernetes components."),
        ("--rotate-certificates", "bool", "false", ["true", "false"],
         "Auto rotate the kubelet client certificates by requesting new certificates from the kube-apiserver."),
        ("--make-iptables-util-chains", "bool", "true", ["true", "false"],
         "If true, kubelet will ensure iptables utility rules are present on host."),
        ("--event-qps", "int32", "5", None, "QPS to limit event creations."),
    ]),
    ("Kubernetes", "Container", "dl", [
        ("imagePullPolicy", "string", "Always", ["Always", "IfNotPresent", "Never"],
         "Image pull policy. Cannot be updated."),
        ("securityContext", "SecurityContext", None, "[]",
         "SecurityContext defines the security options the container should be run with."),
        ("terminationMessagePath", "string", "/dev/termination-log", None,
         "Path at which the file to which the container's termination message will be written is mounted."),
    ]),
    ("Kubernetes", "SecurityContext", "dl", [
        ("runAsNonRoot", "boolean", "false", ["true", "false"],
         "Indicates that the container must run as a non-root user."),
        ("allowPrivilegeEscalation", "boolean", "true", ["true", "false"],
         "AllowPrivilegeEscalation controls whether a process can gain more privileges than its parent process."),
        ("privileged", "boolean", "false", ["true", "false"],
         "Run container in privileged mode."),
        ("readOnlyRootFilesystem", "boolean", "false", ["true", "false"],
         "Whether this container has a read-only root filesystem."),
        ("runAsUser", "integer", None, None, "The UID to run the entrypoint of the container process."),
    ]),
    ("Kubernetes", "PodSpec", "table", [
        ("hostNetwork", "boolean", "false", ["true", "false"],
         "Host networking requested for this pod."),
        ("hostPID", "boolean", "false", ["true", "false"], "Use the host's pid namespace."),
        ("automountServiceAccountToken", "boolean", "true", ["true", "false"],
         "AutomountServiceAccountToken indicates whether a service account token should be automatically mounted."),
    ]),
    ("Kubernetes", "DeploymentSpec", "dl", [
        ("MinReadySeconds", "integer", "0", None,
         "Minimum number of seconds for which a newly created pod should be ready."),
        ("revisionHistoryLimit", "integer", "10", None, "The number of old ReplicaSets to retain to allow rollback."),
    ]),
    ("Docker", "dockerd", "dl", [
        ("--icc", "bool", "true", ["true", "false"], "Enable inter-container communication."),
        ("--userland-proxy", "bool", "true", ["true", "false"], "Use userland proxy for loopback traffic."),
        ("--live-restore", "bool", "false", ["true", "false"],
         "Enable live restore of docker when containers are still running."),
        ("--no-new-privileges", "bool", "false", ["true", "false"],
         "Set no-new-privileges by default for new containers."),
        ("--userns-remap", "string", None, None, "User/Group setting for user namespaces."),
        ("--log-level", "string", "info", ["debug", "info", "warn", "error", "fatal"], "Set the logging level."),
        ("--selinux-enabled", "bool", "false", ["true", "false"], "Enable selinux support."),
    ]),
    ("Azure", "aks", "table", [
        ("--enable-azure-rbac", "bool", "false", ["true", "false"],
         "Enable Azure RBAC to control authorization checks on cluster."),
        ("--enable-private-cluster", "bool", "false", ["true", "false"], "Enable private cluster."),
        ("--network-policy", "string", None, ["azure", "calico", "cilium"],
         "The Kubernetes network policy to use."),
        ("--disable-local-accounts", "bool", "false", ["true", "false"],
         "If set to true, getting static credentials will be disabled for this cluster."),
        ("--api-server-authorized-ip-ranges", "string", "\\", None,
         "Comma-separated list of authorized apiserver IP ranges."),
    ]),
    ("VMware", "esxi", "dl", [
        ("UserVars.ESXiShellTimeOut", "integer", "0", None,
         "Time before automatically disabling local and remote shell access."),
        ("Security.AccountLockFailures", "integer", "5", None,
         "Maximum allowed failed login attempts before locking out a user's account."),
        ("Net.BlockGuestBPDU", "integer", "0", ["0", "1"],
         "Block bridge protocol data unit frames sent by virtual machines."),
        ("Mem.ShareForceSalting", "integer", "2", ["0", "1", "2"],
         "Transparent page sharing salting mode."),
        ("UserVars.SuppressShellWarning", "integer", "0", ["0", "1"],
         "Suppress the warning shown when the shell is enabled."),
    ]),
]

# Pre-normalized records for the JSONL adapter.
COMPOSE = [
    {"argument": "read_only", "type": "boolean", "default": "false", "options": ["true", "false"],
     "description": "Mount the container's root filesystem as read only."},
    {"argument": "cap_drop", "type": "list", "default": "[]", "options": ["ALL", "NET_ADMIN", "SYS_ADMIN"],
     "description": "Drop container capabilities."},
    {"argument": "privileged", "type": "boolean", "default": "false", "options": ["true", "false"],
     "description": "Configures the service container to run with elevated privileges."},
]

# Secured value per argument (the value statements and actions recommend),
# plus the value a negated statement warns against.
SECURE = {
    "--authorization-mode": ("RBAC", "AlwaysAllow"),
    "--anonymous-auth": ("false", "true"),
    "--profiling": ("false", "true"),
    "--kubelet-https": ("true", "false"),
    "--service-account-lookup": ("true", "false"),
    "--enable-admission-plugins": ("NodeRestriction", None),
    "--tls-min-version": ("VersionTLS12", "VersionTLS10"),
    "--read-only-port": ("0", "10255"),
    "--protect-kernel-defaults": ("true", "false"),
    "--rotate-certificates": ("true", "false"),
    "--make-iptables-util-chains": ("true", "false"),
    "imagePullPolicy": ("IfNotPresent", "Always"),
    "runAsNonRoot": ("true", "false"),
    "allowPrivilegeEscalation": ("false", "true"),
    "privileged": ("false", "true"),
    "readOnlyRootFilesystem": ("true", "false"),
    "hostNetwork": ("false", "true"),
    "hostPID": ("false", "true"),
    "automountServiceAccountToken": ("false", "true"),
    "--icc": ("false", "true"),
    "--userland-proxy": ("false", "true"),
    "--live-restore": ("true", "false"),
    "--no-new-privileges": ("true", "false"),
    "--selinux-enabled": ("true", "false"),
    "--enable-azure-rbac": ("true", "false"),
    "--enable-private-cluster": ("true", "false"),
    "--disable-local-accounts": ("true", "false"),
    "--network-policy": ("calico", None),
    "Net.BlockGuestBPDU": ("1", "0"),
    "Mem.ShareForceSalting": ("2", "0"),
    "read_only": ("true", "false"),
    "cap_drop": ("ALL", None),
}

# Arguments mentioned only in goals (no option knowledge to recommend).
GOAL_ONLY = ["--audit-log-path", "--audit-policy-file", "securityContext", "--userns-remap",
             "UserVars.ESXiShellTimeOut", "Security.AccountLockFailures", "--api-server-authorized-ip-ranges"]

COMPONENT_OF = {}
for system, component, _, entries in OFFICIAL:
    for arg, *_ in entries:
        COMPONENT_OF.setdefault(arg, (system, component))
for rec in COMPOSE:
    COMPONENT_OF.setdefault(rec["argument"], ("Docker", "compose"))

COMPONENT_PROSE = {
    "kube-apiserver": "API server", "kubelet": "kubelet", "Container": "container", "SecurityContext": "container",
    "PodSpec": "pod", "DeploymentSpec": "deployment", "dockerd": "Docker daemon", "aks": "AKS cluster",
    "esxi": "ESXi host", "compose": "Compose service",
}

STATEMENT = [
    "Ensure that the {arg} argument is set to {val}.",
    "Ensure that the {arg} argument includes {val}.",
    "The {arg} setting should be configured as {val} on every {comp}.",
    "It is recommended to set {arg} to {val} for production clusters.",
    "Verify that {arg} is configured with the value {val}.",
    "The {arg} parameter must be set to {val} in hardened deployments.",
    "Administrators should configure {arg} as {val} on the {comp}.",
    "Make sure {arg} is {val} before exposing the {comp} to the network.",
    "We recommend that {arg} is always set to {val}.",
    "Set {arg} to {val} to follow the benchmark recommendation.",
]

NEGATED = [
    "Do not set {arg} to {val}.",
    "Never configure {arg} as {val} on a production {comp}.",
    "Avoid leaving {arg} at {val} on the {comp}.",
]

GOAL = [
    "Setting {arg} correctly restricts unauthorized access to the {comp}.",
    "This prevents attackers from abusing {arg} to escalate privileges on the node.",
    "A misconfigured {arg} allows any user in the cluster to gain access to sensitive data.",
    "The {arg} control ensures fine-grained control over the operations performed in the cluster.",
    "Leaving {arg} at its default exposes the {comp} to anonymous requests.",
    "Hardening {arg} reduces the potential attack surface of the {comp}.",
    "The {arg} protection keeps a compromised workload from breaking out to the host.",
    "Properly configured {arg} limits the damage an attacker can cause after an initial compromise.",
    "Attackers routinely scan for a weak {arg} configuration to mount denial of service attacks.",
    "Reviewing {arg} helps detect malicious activity before it spreads across the cluster.",
]

ACTION = [
    "Edit the {comp} configuration file on the master node and set {arg} to {val}.",
    "Run the {comp} with {arg}={val} and restart the service.",
    "Open the manifest file of the {comp} and add {arg}={val} to the command list.",
    "Add {arg}: {val} to the manifest and apply it with kubectl.",
    "Restart the {comp} after changing {arg} to {val}.",
    "Execute the following command to set {arg} to {val} on each node.",
    "Update the systemd unit file so that {arg} is passed as {val}, then reload the daemon.",
    "Edit the API server pod specification file and set {arg} to {val}.",
]

OTHER = [
    "In this article, we will take a deep dive into key {system} security configurations and the recommended best practices.",
    "Thanks for reading and feel free to share your feedback with us.",
    "The {system} community released a new minor version last week.",
    "This post is part of a series on cloud native security.",
    "Our team has been working with {system} for several years now.",
    "We published a companion video that walks through the examples.",
    "Many organizations are moving their workloads to containers.",
    "The survey collected responses from more than three hundred engineers.",
    "Stay tuned for the next part of this series.",
    "The conference talk recording is available on our channel.",
    "The azure container registry is Microsoft's own hosting platform for Docker images.",
    "Security teams often struggle to keep up with the pace of releases.",
]


def fill(template, arg, val=None, system="Kubernetes"):
    comp = COMPONENT_PROSE[COMPONENT_OF[arg][1]] if arg else "cluster"
    return template.format(arg=arg, val=val, comp=comp, system=system)


def render_official(system, component, layout, entries):
    parts = []
    if layout == "dl":
        parts.append("<h2>Options</h2>\n<dl>")
        for arg, typ, default, options, desc in entries:
            lines = [desc]
            if default is not None:
                lines.append("Default: " + default)
            if typ == "":
                lines.append("Type: ")
            if options == "[]":
                lines.append("Options: []")
            elif options:
                lines.append("Options: " + ", ".join(options))
            term = arg + (" " + typ if typ else "")
            parts.append("<dt>{}</dt>\n<dd>{}</dd>".format(term, "<br>\n".join(lines)))
        parts.append("</dl>")
    else:
        parts.append("<table>\n<tr><th>Argument</th><th>Description</th></tr>")
        for arg, typ, default, options, desc in entries:
            lines = [desc]
            if default is not None:
                lines.append("Default: " + default)
            lines.append("Type: " + typ)
            if options == "[]":
                lines.append("Options: []")
            elif options:
                lines.append("Options: " + ", ".join(options))
            parts.append("<tr><td>{}</td><td>{}</td></tr>".format(arg, "<br>\n".join(lines)))
        parts.append("</table>")
    return "<html><body><h1>{} {} reference</h1>\n{}\n</body></html>".format(system, component, "\n".join(parts))


def official_docs():
    docs = []
    for i, (system, component, layout, entries) in enumerate(OFFICIAL):
        docs.append({"id": "official-{:02d}".format(i + 1), "source": "official-doc", "format": "html",
                     "uri": "https://docs.example.org/{}/{}".format(system.lower(), component.lower()),
                     "system": system, "component": component,
                     "body": render_official(system, component, layout, entries)})
    docs.append({"id": "official-{:02d}".format(len(OFFICIAL) + 1), "source": "official-doc", "format": "jsonl",
                 "uri": "https://docs.example.org/docker/compose", "system": "Docker", "component": "compose",
                 "body": "\n".join(json.dumps(r) for r in COMPOSE)})
    return docs


def relevant_sentences(rng, arg):
    """Statement/goal/action sentences about one argument."""
    out = []
    secured = SECURE.get(arg)
    out.append(fill(rng.choice(GOAL), arg))
    if secured:
        out.append(fill(rng.choice(STATEMENT), arg, secured[0]))
        if rng.random() < 0.6:
            out.append(fill(rng.choice(ACTION), arg, secured[0]))
        if secured[1] and rng.random() < 0.2:
            out.append(fill(rng.choice(NEGATED), arg, secured[1]))
    elif rng.random() < 0.5:
        out.append(fill(rng.choice(GOAL), arg))
    return out


def render_body(sentences, fmt):
    if fmt == "html":
        return "<html><body>" + "".join("<p>{}</p>".format(s) for s in sentences) + "</body></html>"
    if fmt == "markdown":
        paras = []
        for i in range(0, len(sentences), 3):
            paras.append(" ".join(sentences[i:i + 3]))
        return "# Notes\n\n" + "\n\n".join(paras) + "\n"
    return " ".join(sentences) + "\n"


def security_corpus():
    rng = random.Random(348)
    args = sorted(SECURE) + GOAL_ONLY
    groups = [("security-advisory", 42, 39, "plaintext"), ("internet-artifact", 101, 91, "markdown"),
              ("whitepaper", 205, 205, "html")]
    docs = []
    for source, total, relevant, fmt in groups:
        flags = [True] * relevant + [False] * (total - relevant)
        rng.shuffle(flags)
        for i, is_relevant in enumerate(flags):
            system = rng.choice(["Kubernetes", "Docker", "Azure", "VMware"])
            sentences = [fill(rng.choice(OTHER), None, system=system)]
            if is_relevant:
                chosen = rng.sample(args, rng.randint(1, 3))
                for arg in chosen:
                    sentences.extend(relevant_sentences(rng, arg))
                    system = COMPONENT_OF[arg][0]
            sentences.append(fill(rng.choice(OTHER), None, system=system))
            docs.append({"id": "{}-{:03d}".format(source, i + 1), "source": source, "format": fmt,
                         "uri": "https://security.example.org/{}/{}".format(source, i + 1),
                         "system": "", "component": "", "body": render_body(sentences, fmt)})
    return docs


def figure_docs():
    fig5 = ("Kubernetes 1.22 is the second release of the year and brings a number of enhancements. "
            "The release team thanks every contributor who helped ship it. "
            "The azure container registry is Microsoft's own hosting platform for Docker images. "
            "We also updated the documentation to make the getting started guide easier to follow. "
            "Please join the community meeting if you would like to help with the next release.")
    fig6 = ("<p>The API server is the front door of the cluster. "
            "Ensure that the <b>--authorization-mode</b> argument includes <b>RBAC</b>. "
            "RBAC ensures fine-grained control over the operations performed by the different entities in the cluster. "
            "RBAC restricts unauthorized access to the API server. "
            "Edit the API server pod specification file on the master node and set the "
            "<b>--authorization-mode</b> parameter to a value that includes <b>RBAC</b>.</p>"
            "<p>Ensure that the <b>--anonymous-auth</b> argument is set to false. "
            "Disabling anonymous requests restricts unauthorized access to the API server.</p>")
    return [
        {"id": "fig5-release-notes", "source": "internet-artifact", "format": "plaintext",
         "uri": "https://blog.example.org/release-notes", "system": "", "component": "", "body": fig5},
        {"id": "fig6-api-server-hardening", "source": "internet-artifact", "format": "html",
         "uri": "https://blog.example.org/api-server-hardening", "system": "", "component": "",
         "body": "<html><body>" + fig6 + "</body></html>"},
    ]


def relevancy_corpus():
    """40 documents with planted ground truth encoded in the id prefix."""
    rng = random.Random(40)
    mentions = ["--anonymous-auth", "--profiling", "imagePullPolicy", "allowPrivilegeEscalation", "--icc",
                "Net.BlockGuestBPDU", "--authorization-mode", "runAsNonRoot", "read_only", "--enable-private-cluster"]
    traps = [
        "Turn off admission control plugins you do not need and review the anonymous auth setting of the server.",
        "The image pull policy decides when the node downloads a fresh copy of the image.",
        "Disable the read only port of the node agent because it serves data without authentication.",
        "Enabling the authorization mode of role based access control is the first hardening step.",
        "Set the run as non root flag in the container security context of every workload.",
    ]
    docs = []
    for i in range(20):
        arg = mentions[i % len(mentions)]
        sentences = [fill(rng.choice(OTHER), None), fill(rng.choice(STATEMENT + GOAL), arg, SECURE[arg][0]),
                     fill(rng.choice(OTHER), None)]
        docs.append({"id": "relevant-{:02d}".format(i + 1), "source": "internet-artifact", "format": "plaintext",
                     "uri": "", "system": "", "component": "", "body": " ".join(sentences)})
    for i in range(15):
        sentences = rng.sample(OTHER, 3)
        docs.append({"id": "irrelevant-{:02d}".format(i + 1), "source": "whitepaper", "format": "plaintext",
                     "uri": "", "system": "", "component": "", "body": " ".join(sentences)})
    for i, trap in enumerate(traps):
        docs.append({"id": "trap-{:02d}".format(i + 1), "source": "security-advisory", "format": "plaintext",
                     "uri": "", "system": "", "component": "", "body": fill(rng.choice(OTHER), None) + " " + trap})
    rng.shuffle(docs)
    return docs


# Hand-written sentences that are not template output, so the dataset is not
# purely synthetic.
HAND_LABELED = [
    ("Ensure that the --authorization-mode argument includes RBAC.", "statement"),
    ("Ensure that the --anonymous-auth argument is set to false.", "statement"),
    ("Force containers to drop CAP_DAC_OVERRIDE capabilities in PodSecurityPolicy.", "statement"),
    ("The kubelet should only accept authenticated requests.", "statement"),
    ("Containers should not share the host network namespace.", "statement"),
    ("Only trusted registries should be allowed to serve images to the cluster.", "statement"),
    ("RBAC ensures fine-grained control over the operations performed by the different entities in the cluster.", "goal"),
    ("RBAC restricts unauthorized access to the API server.", "goal"),
    ("Without a securityContext any user in the cluster could get access to the host.", "goal"),
    ("A DDoS attack can be mounted when every pod start pulls the image again.", "goal"),
    ("The default true option generates a significant amount of profiling data that helps attackers.", "goal"),
    ("Restricting capabilities limits what an attacker can do from inside a compromised container.", "goal"),
    ("Edit the API server pod specification file /etc/kubernetes/manifests/kube-apiserver.yaml on the master node.", "action"),
    ("Edit the API server pod specification file on the master node and set the --authorization-mode parameter to RBAC.", "action"),
    ("Run kubectl apply -f policy.yaml to install the network policy.", "action"),
    ("Restart the kubelet service with systemctl daemon-reload followed by systemctl restart kubelet.", "action"),
    ("Create a ClusterRole that grants read access to secrets and bind it to the service account.", "action"),
    ("Upgrade the node image and then drain each node before rebooting it.", "action"),
    ("In this article, we will take a deep dive into key Kubernetes security configurations and the recommended best practices.", "other"),
    ("Kubernetes was originally designed by Google and is now maintained by the CNCF.", "other"),
    ("The azure container registry is Microsoft's own hosting platform for Docker images.", "other"),
    ("We would like to thank the reporters for disclosing the issue responsibly.", "other"),
    ("This advisory was last updated in August.", "other"),
    ("Feel free to reach out on the community forum with questions.", "other"),
]

# statement/goal/action/other = 52/57/50/41, in line with 790/860/751/631.
TARGET = {"statement": 52, "goal": 57, "action": 50, "other": 41}

EXTRA_OTHER = [
    "The meetup will take place in the {city} office next month.",
    "Our {system} team grew to {n} engineers this year.",
    "The {system} project celebrated its anniversary with a community event in {city}.",
    "Slides from the {city} workshop are linked at the bottom of the page.",
    "This {system} release contains {n} bug fixes and documentation improvements.",
    "We interviewed {n} operators about their daily routine with {system}.",
]


def labeled_dataset():
    rng = random.Random(3032)
    rows = list(HAND_LABELED)
    have = {label: sum(1 for _, l in rows if l == label) for label in TARGET}
    args = sorted(SECURE)
    seen = {text for text, _ in rows}
    banks = {"statement": STATEMENT, "goal": GOAL, "action": ACTION}
    while any(have[l] < TARGET[l] for l in TARGET):
        for label in sorted(TARGET):
            if have[label] >= TARGET[label]:
                continue
            if label == "other":
                template = rng.choice(OTHER + EXTRA_OTHER)
                text = template.format(system=rng.choice(["Kubernetes", "Docker", "Azure", "VMware"]),
                                       city=rng.choice(["Berlin", "Melbourne", "Austin", "Tokyo", "Lisbon"]),
                                       n=rng.randint(3, 90))
            else:
                arg = rng.choice(args)
                text = fill(rng.choice(banks[label]), arg, SECURE[arg][0])
            if text in seen:
                continue
            seen.add(text)
            rows.append((text, label))
            have[label] += 1
    rng.shuffle(rows)
    return rows


MANIFESTS = {
    "fig8-deployment.yaml": """\
apiVersion: apps/v1
kind: Deployment
metadata:
  name: nginx-deployment
  labels:
    app: nginx
spec:
  replicas: 3
  selector:
    matchLabels:
      app: nginx
  template:
    metadata:
      labels:
        app: nginx
    spec:
      containers:
      - name: nginx
        image: nginx:1.14.2
        imagePullPolicy: Always
        ports:
        - containerPort: 80
""",
    "compliant-deployment.yaml": """\
apiVersion: apps/v1
kind: Deployment
metadata:
  name: web
spec:
  replicas: 2
  selector:
    matchLabels:
      app: web
  template:
    metadata:
      labels:
        app: web
    spec:
      hostNetwork: false
      automountServiceAccountToken: false
      containers:
      - name: web
        image: registry.example.org/web:2.4.1
        imagePullPolicy: IfNotPresent
        securityContext:
          runAsNonRoot: true
          allowPrivilegeEscalation: false
          readOnlyRootFilesystem: true
          privileged: false
""",
    "two-containers.yaml": """\
apiVersion: apps/v1
kind: Deployment
metadata:
  name: api
spec:
  template:
    spec:
      hostNetwork: false
      containers:
      - name: api
        image: api:1.0.0
        imagePullPolicy: IfNotPresent
        securityContext:
          runAsNonRoot: true
          allowPrivilegeEscalation: false
      - name: sidecar
        image: proxy:0.9
        imagePullPolicy: Always
        securityContext:
          runAsNonRoot: true
          allowPrivilegeEscalation: false
""",
    "pod-minimal.yaml": "kind: Pod\n",
    "pod-privileged.yaml": """\
apiVersion: v1
kind: Pod
metadata:
  name: debug
  namespace: kube-system
spec:
  hostNetwork: true
  hostPID: true
  containers:
  - name: shell
    image: busybox:1.36
    command: ["sh", "-c", "sleep 3600"]
    securityContext:
      privileged: true
      runAsUser: 0
""",
    "service.yaml": """\
apiVersion: v1
kind: Service
metadata:
  name: web
  annotations:
    service.beta.kubernetes.io/aws-load-balancer-internal: "true"
spec:
  type: LoadBalancer
  ports:
  - port: 443
    targetPort: 8443
    protocol: TCP
  selector:
    app: web
""",
    "configmap.yaml": """\
apiVersion: v1
kind: ConfigMap
metadata:
  name: settings
data:
  retries: "3"
  ratio: "0.75"
  enabled: "yes"
  empty: ""
  motd: "line one\\nline two"
  path: /var/lib/app
""",
    "resources.yaml": """\
apiVersion: v1
kind: Pod
metadata:
  name: sized
spec:
  containers:
  - name: app
    image: app:3
    resources:
      limits:
        cpu: 0.5
        memory: 256Mi
      requests:
        cpu: 0.25
        memory: 128Mi
    env:
    - name: DEBUG
      value: "false"
    - name: WORKERS
      value: "4"
    - name: OPTIONAL
      value: ~
""",
    "multi-doc.yaml": """\
apiVersion: v1
kind: Namespace
metadata:
  name: payments
---
apiVersion: v1
kind: ServiceAccount
metadata:
  name: payments-sa
  namespace: payments
automountServiceAccountToken: false
---
apiVersion: apps/v1
kind: Deployment
metadata:
  name: payments
  namespace: payments
spec:
  replicas: 1
  template:
    spec:
      containers:
      - name: payments
        image: payments:7.1
        imagePullPolicy: Always
""",
    "daemonset.yaml": """\
apiVersion: apps/v1
kind: DaemonSet
metadata:
  name: node-exporter
spec:
  selector:
    matchLabels:
      app: node-exporter
  template:
    metadata:
      labels:
        app: node-exporter
    spec:
      hostNetwork: true
      hostPID: true
      tolerations:
      - operator: Exists
      containers:
      - name: exporter
        image: prom/node-exporter:v1.6.0
        args:
        - --path.rootfs=/host
        - --web.listen-address=:9100
""",
    "statefulset.yaml": """\
apiVersion: apps/v1
kind: StatefulSet
metadata:
  name: db
spec:
  serviceName: db
  replicas: 3
  podManagementPolicy: Parallel
  template:
    spec:
      terminationGracePeriodSeconds: 30
      containers:
      - name: postgres
        image: postgres:15
        ports:
        - containerPort: 5432
          name: pg
  volumeClaimTemplates:
  - metadata:
      name: data
    spec:
      accessModes: [ReadWriteOnce]
      resources:
        requests:
          storage: 10Gi
""",
    "cronjob.yaml": """\
apiVersion: batch/v1
kind: CronJob
metadata:
  name: backup
spec:
  schedule: "0 3 * * *"
  suspend: false
  successfulJobsHistoryLimit: 3
  jobTemplate:
    spec:
      backoffLimit: 2
      template:
        spec:
          restartPolicy: OnFailure
          containers:
          - name: backup
            image: backup:2
            args: [--target, "s3://bucket/path", --compress]
""",
    "networkpolicy.yaml": """\
apiVersion: networking.k8s.io/v1
kind: NetworkPolicy
metadata:
  name: deny-all
spec:
  podSelector: {}
  policyTypes:
  - Ingress
  - Egress
  ingress: []
""",
    "role.yaml": """\
apiVersion: rbac.authorization.k8s.io/v1
kind: Role
metadata:
  name: reader
  namespace: default
rules:
- apiGroups: [""]
  resources: ["pods", "pods/log"]
  verbs: ["get", "list", "watch"]
""",
    "ingress.yaml": """\
apiVersion: networking.k8s.io/v1
kind: Ingress
metadata:
  name: web
  annotations:
    nginx.ingress.kubernetes.io/ssl-redirect: "true"
    nginx.ingress.kubernetes.io/proxy-body-size: 8m
spec:
  tls:
  - hosts:
    - web.example.org
    secretName: web-tls
  rules:
  - host: web.example.org
    http:
      paths:
      - path: /
        pathType: Prefix
        backend:
          service:
            name: web
            port:
              number: 443
""",
    "scalars.yaml": """\
kind: Scalars
nothing: null
tilde: ~
empty:
yes_bool: true
no_bool: False
decimal: 42
negative: -17
octal: 0o17
hex: 0x1F
float: 3.25
exponent: 1.5e3
quoted_int: "42"
quoted_bool: 'true'
legacy_yes: "yes"
colon: "a: b"
hash: "x #y"
leading_dash: "- item"
unicode: "naïve café"
multiline: "first\\nsecond"
dashes: --flag
""",
    "hpa.json": """\
{
  "apiVersion": "autoscaling/v2",
  "kind": "HorizontalPodAutoscaler",
  "metadata": {"name": "web"},
  "spec": {
    "minReplicas": 2,
    "maxReplicas": 10,
    "metrics": [
      {"type": "Resource", "resource": {"name": "cpu", "target": {"type": "Utilization", "averageUtilization": 70}}}
    ],
    "behavior": {"scaleDown": {"stabilizationWindowSeconds": 300.5, "selectPolicy": null, "enabled": true}}
  }
}
""",
    "pod.json": """\
{
  "apiVersion": "v1",
  "kind": "Pod",
  "metadata": {"name": "json-pod", "labels": {"tier": "backend"}},
  "spec": {
    "hostNetwork": false,
    "containers": [
      {"name": "app", "image": "app:1", "imagePullPolicy": "Never",
       "securityContext": {"runAsNonRoot": true, "allowPrivilegeEscalation": false}}
    ]
  }
}
""",
    "list.json": """\
[
  {"apiVersion": "v1", "kind": "Secret", "metadata": {"name": "a"}, "type": "Opaque", "data": {"k": "dg=="}},
  {"apiVersion": "v1", "kind": "Secret", "metadata": {"name": "b"}, "immutable": true}
]
""",
    "job.yaml": """\
apiVersion: batch/v1
kind: Job
metadata:
  name: migrate
spec:
  ttlSecondsAfterFinished: 600
  template:
    spec:
      restartPolicy: Never
      containers:
      - name: migrate
        image: migrate:4
        command:
        - /bin/migrate
        - --dry-run=false
        securityContext:
          runAsNonRoot: true
          readOnlyRootFilesystem: true
""",
    "nested-lists.yaml": """\
kind: Matrix
rows:
- - 1
  - 2
- - 3
  - [4, 5]
- []
- {}
- name: inline
  values: [a, b, c]
""",
}

BINDINGS = []
for kind, pod in [("Deployment", "spec.template.spec"), ("Pod", "spec"), ("StatefulSet", "spec.template.spec"),
                  ("DaemonSet", "spec.template.spec")]:
    c = pod + ".containers[*]"
    BINDINGS += [
        (kind, c + ".securityContext", "securityContext", True, "{}"),
        (kind, c + ".securityContext.runAsNonRoot", "runAsNonRoot", True, "true"),
        (kind, c + ".securityContext.allowPrivilegeEscalation", "allowPrivilegeEscalation", True, "false"),
        (kind, c + ".securityContext.privileged", "privileged", False, "false"),
        (kind, c + ".securityContext.readOnlyRootFilesystem", "readOnlyRootFilesystem", False, "true"),
        (kind, c + ".imagePullPolicy", "imagePullPolicy", False, "IfNotPresent"),
        (kind, pod + ".hostNetwork", "hostNetwork", True, "false"),
        (kind, pod + ".hostPID", "hostPID", False, "false"),
        (kind, pod + ".automountServiceAccountToken", "automountServiceAccountToken", False, "false"),
    ]


def bindings_yaml():
    out = ["# Manifest paths bound to knowledge-graph arguments."]
    for kind, path, argument, required, remediation in BINDINGS:
        out.append("- kind: " + kind)
        out.append("  path: " + path)
        out.append("  argument: " + argument)
        out.append("  required: " + ("true" if required else "false"))
        out.append("  remediation: " + remediation)
    return "\n".join(out) + "\n"


def write_jsonl(name, rows):
    (HERE / name).write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")


def main():
    write_jsonl("config_docs.jsonl", official_docs())
    write_jsonl("security_corpus.jsonl", security_corpus())
    write_jsonl("figure_docs.jsonl", figure_docs())
    write_jsonl("relevancy_corpus.jsonl", relevancy_corpus())

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["text", "label"])
    writer.writerows(labeled_dataset())
    (HERE / "labeled_sentences.csv").write_text(buf.getvalue(), encoding="utf-8")

    manifests = HERE / "manifests"
    manifests.mkdir(exist_ok=True)
    for name, text in MANIFESTS.items():
        (manifests / name).write_text(text, encoding="utf-8")
    (HERE / "bindings.yaml").write_text(bindings_yaml(), encoding="utf-8")


if __name__ == "__main__":
    main()
